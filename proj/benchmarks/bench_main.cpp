#include <benchmark/benchmark.h>

#include "meshsoc/centrality.hpp"
#include "meshsoc/graph.hpp"
#include "meshsoc/stdma.hpp"

namespace {

using namespace meshsoc;

void BM_Betweenness(benchmark::State& state) {
  const auto g = random_geometric_graph(static_cast<std::size_t>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_AllPairsDistances(benchmark::State& state) {
  const auto g = random_geometric_graph(static_cast<std::size_t>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_distances(g));
}
BENCHMARK(BM_AllPairsDistances)->RangeMultiplier(2)->Range(50, 800);

void BM_ElectionSlot(benchmark::State& state) {
  const auto g = random_geometric_graph(static_cast<std::size_t>(state.range(0)), 6.0, 1);
  stdma::StdmaConfig cfg;
  cfg.graph = g;
  const stdma::Election election(g, cfg, closeness_centrality(g));
  std::vector<std::uint8_t> won;
  std::uint64_t slot = 0;
  for (auto _ : state) {
    election.winners(stdma::SlotId{slot++}, won);
    benchmark::DoNotOptimize(won.data());
  }
}
BENCHMARK(BM_ElectionSlot)->Arg(19)->Arg(30)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
