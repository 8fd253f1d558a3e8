#include "meshsoc/attack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meshsoc/error.hpp"
#include "meshsoc/rng.hpp"

namespace meshsoc::attack {

namespace {

HopCurvePoint measure(const Graph& g, std::size_t removed, std::optional<NodeId> victim) {
  const auto stats = average_hop_count(g);
  return {removed, stats.avg_hops, stats.connected, stats.disconnected, victim};
}

// Eigenvector centrality is only defined per component; rank inside the
// largest one (earliest on ties) and give everything else zero.
CentralityScores eigenvector_for_ranking(const Graph& g, const EigenvectorOptions& options) {
  const auto components = connected_components(g);
  if (components.size() <= 1) return eigenvector_centrality(g, options);

  const auto largest = std::max_element(
      components.begin(), components.end(),
      [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<bool> keep(g.size(), false);
  for (const auto i : *largest) keep[i] = true;
  std::vector<NodeId> others;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!keep[i]) others.push_back(g.id(i));

  const auto sub = eigenvector_centrality(remove_nodes(g, others), options);
  CentralityScores scores;
  scores.metric = CentralityMetric::Eigenvector;
  scores.nodes.assign(g.ids().begin(), g.ids().end());
  scores.values.assign(g.size(), 0.0);
  for (std::size_t k = 0; k < sub.size(); ++k) scores.values[g.index(sub.nodes[k])] = sub.values[k];
  return scores;
}

CentralityScores scores_for_ranking(const Graph& g, CentralityMetric metric,
                                    const EigenvectorOptions& options) {
  if (metric == CentralityMetric::Eigenvector) return eigenvector_for_ranking(g, options);
  if (metric == CentralityMetric::Betweenness && g.size() < 3) {
    // No node can lie strictly between two others.
    CentralityScores scores;
    scores.metric = metric;
    scores.nodes.assign(g.ids().begin(), g.ids().end());
    scores.values.assign(g.size(), 0.0);
    return scores;
  }
  return compute_centrality(g, metric, options);
}

}  // namespace

HopStats average_hop_count(const Graph& g) {
  HopStats stats;
  std::uint64_t total_hops = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto dist = bfs_distances(g, i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (dist[j] == kUnreachable) {
        ++stats.disconnected;
      } else {
        ++stats.connected;
        total_hops += dist[j];
      }
    }
  }
  if (stats.connected > 0)
    stats.avg_hops = static_cast<double>(total_hops) / static_cast<double>(stats.connected);
  return stats;
}

std::size_t default_max_removals(std::size_t node_count) {
  if (node_count < 2) return 0;
  const std::size_t wanted = node_count <= 25 ? 5 : node_count / 5;
  return std::min(wanted, node_count - 1);
}

void validate(const AttackConfig& cfg) {
  if (cfg.graph.size() < 2) throw InvalidArgument("attack needs a graph with at least 2 nodes");
  if (cfg.max_removals >= cfg.graph.size())
    throw InvalidArgument("max_removals (" + std::to_string(cfg.max_removals) +
                          ") must be smaller than the node count (" +
                          std::to_string(cfg.graph.size()) + ")");
  if (cfg.random_trials < 1) throw InvalidArgument("random_trials must be at least 1");
}

std::vector<HopCurvePoint> run_targeted_attack(const AttackConfig& cfg, CentralityMetric metric) {
  validate(cfg);
  if (std::find(cfg.metrics.begin(), cfg.metrics.end(), metric) == cfg.metrics.end())
    throw InvalidArgument("metric '" + std::string(to_string(metric)) +
                          "' is not part of the attack configuration");

  std::vector<HopCurvePoint> curve;
  curve.reserve(cfg.max_removals + 1);
  curve.push_back(measure(cfg.graph, 0, std::nullopt));

  if (cfg.mode == RecomputeMode::Static) {
    const auto ranked = rank_nodes(scores_for_ranking(cfg.graph, metric, cfg.eigenvector),
                                   cfg.max_removals);
    std::vector<NodeId> victims;
    for (std::size_t k = 0; k < cfg.max_removals; ++k) {
      victims.push_back(ranked.order[k].first);
      curve.push_back(measure(remove_nodes(cfg.graph, victims), k + 1, victims.back()));
    }
    return curve;
  }

  Graph residual = cfg.graph;
  for (std::size_t k = 0; k < cfg.max_removals; ++k) {
    if (residual.empty()) throw InvalidArgument("attack removed every node");
    const auto top = rank_nodes(scores_for_ranking(residual, metric, cfg.eigenvector), 1);
    const NodeId victim = top.order.front().first;
    residual = remove_nodes(residual, std::span<const NodeId>(&victim, 1));
    curve.push_back(measure(residual, k + 1, victim));
  }
  return curve;
}

std::vector<BaselinePoint> run_random_baseline(const AttackConfig& cfg) {
  validate(cfg);
  const auto points = cfg.max_removals + 1;
  // hops[k][t]: trial t's average at k removals, when defined.
  std::vector<std::vector<double>> hops(points);
  std::vector<double> connected(points, 0.0);
  std::vector<double> disconnected(points, 0.0);
  std::vector<std::size_t> undefined(points, 0);

  std::vector<NodeId> order(cfg.graph.ids().begin(), cfg.graph.ids().end());
  for (std::size_t t = 0; t < cfg.random_trials; ++t) {
    std::vector<NodeId> shuffled = order;
    SplitMix64 rng(cfg.seed + t);
    shuffle(shuffled, rng);
    for (std::size_t k = 0; k < points; ++k) {
      const auto stats = average_hop_count(
          remove_nodes(cfg.graph, std::span<const NodeId>(shuffled.data(), k)));
      if (stats.avg_hops)
        hops[k].push_back(*stats.avg_hops);
      else
        ++undefined[k];
      connected[k] += static_cast<double>(stats.connected);
      disconnected[k] += static_cast<double>(stats.disconnected);
    }
  }

  const auto trials = static_cast<double>(cfg.random_trials);
  std::vector<BaselinePoint> baseline(points);
  for (std::size_t k = 0; k < points; ++k) {
    auto& p = baseline[k];
    p.removed = k;
    p.connected_pairs = connected[k] / trials;
    p.disconnected_pairs = disconnected[k] / trials;
    p.undefined_trials = undefined[k];
    const auto& xs = hops[k];
    if (xs.empty()) continue;
    double sum = 0.0;
    for (const double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double sq = 0.0;
    for (const double x : xs) sq += (x - mean) * (x - mean);
    p.avg_hops = mean;
    p.stddev = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
  }
  return baseline;
}

AttackResult run_attack_experiment(const AttackConfig& cfg) {
  validate(cfg);
  AttackResult result;
  for (const auto metric : cfg.metrics)
    result.per_metric.emplace(metric, run_targeted_attack(cfg, metric));
  result.random_baseline = run_random_baseline(cfg);
  return result;
}

CsvTable to_csv(const AttackResult& result) {
  CsvTable table;
  table.header = {"metric", "removed", "avg_hops", "connected_pairs", "disconnected_pairs",
                  "stddev"};
  table.key_columns = 2;
  const auto hops_cell = [](const std::optional<double>& v) -> CsvCell {
    if (v) return *v;
    return std::monostate{};
  };
  for (const auto& [metric, curve] : result.per_metric) {
    for (const auto& p : curve) {
      table.rows.push_back({std::string(to_string(metric)), static_cast<std::int64_t>(p.removed),
                            hops_cell(p.avg_hops), static_cast<std::int64_t>(p.connected_pairs),
                            static_cast<std::int64_t>(p.disconnected_pairs), std::monostate{}});
    }
  }
  for (const auto& p : result.random_baseline) {
    table.rows.push_back({std::string("random"), static_cast<std::int64_t>(p.removed),
                          hops_cell(p.avg_hops), p.connected_pairs, p.disconnected_pairs,
                          p.avg_hops ? CsvCell(p.stddev) : CsvCell(std::monostate{})});
  }
  return table;
}

}  // namespace meshsoc::attack
