#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "meshsoc/centrality.hpp"
#include "meshsoc/csv.hpp"
#include "meshsoc/graph.hpp"

namespace meshsoc::attack {

// Coordinated-attack experiments. A failed node drops out of the routing
// topology; with all-pairs uniform traffic and shortest-hop routing the mean
// hop count of delivered packets is the mean shortest-path length over the
// surviving reachable pairs.

enum class RecomputeMode {
  Static,     ///< rank once on the intact graph
  Recompute,  ///< re-rank the residual graph before every removal
};

struct HopStats {
  std::optional<double> avg_hops;  ///< nullopt when no pair is reachable
  std::size_t connected = 0;
  std::size_t disconnected = 0;
};

/// Mean hop count over unordered reachable pairs; unreachable pairs are
/// counted separately.
HopStats average_hop_count(const Graph& g);

struct HopCurvePoint {
  std::size_t removed = 0;
  std::optional<double> avg_hops;
  std::size_t connected_pairs = 0;
  std::size_t disconnected_pairs = 0;
  std::optional<NodeId> victim;  ///< node removed at this step (none at step 0)
};

/// Pointwise mean over random trials. Trials whose point is undefined are
/// left out of the hop mean and counted in `undefined_trials`.
struct BaselinePoint {
  std::size_t removed = 0;
  std::optional<double> avg_hops;
  double stddev = 0.0;  ///< sample standard deviation of avg_hops
  double connected_pairs = 0.0;
  double disconnected_pairs = 0.0;
  std::size_t undefined_trials = 0;
};

struct AttackConfig {
  Graph graph;
  std::vector<CentralityMetric> metrics{CentralityMetric::Betweenness,
                                        CentralityMetric::Closeness, CentralityMetric::Degree};
  std::size_t max_removals = 5;
  std::size_t random_trials = 10;
  std::uint64_t seed = 1;
  RecomputeMode mode = RecomputeMode::Static;
  EigenvectorOptions eigenvector{};
};

/// 5 for small networks, 20% of n otherwise, never reaching n.
std::size_t default_max_removals(std::size_t node_count);

struct AttackResult {
  std::map<CentralityMetric, std::vector<HopCurvePoint>> per_metric;
  std::vector<BaselinePoint> random_baseline;
};

/// Throws InvalidArgument unless max_removals < n and random_trials >= 1.
void validate(const AttackConfig& cfg);

/// Removes the top-ranked node one at a time, max_removals times. Element 0
/// of the result is the intact graph.
std::vector<HopCurvePoint> run_targeted_attack(const AttackConfig& cfg, CentralityMetric metric);

/// Trial t shuffles the nodes with SplitMix64(seed + t) and removes them in
/// that order.
std::vector<BaselinePoint> run_random_baseline(const AttackConfig& cfg);

AttackResult run_attack_experiment(const AttackConfig& cfg);

/// Rows `metric,removed,avg_hops,connected_pairs,disconnected_pairs,stddev`,
/// with the baseline under metric "random".
CsvTable to_csv(const AttackResult& result);

}  // namespace meshsoc::attack
