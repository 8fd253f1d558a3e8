#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "meshsoc/error.hpp"
#include "meshsoc/graph.hpp"

namespace meshsoc {

enum class CentralityMetric { Degree, Closeness, Betweenness, Eigenvector };

inline constexpr CentralityMetric kAllMetrics[] = {
    CentralityMetric::Degree, CentralityMetric::Closeness, CentralityMetric::Betweenness,
    CentralityMetric::Eigenvector};

/// Lower-case name: "degree", "closeness", "betweenness", "eigenvector".
std::string_view to_string(CentralityMetric metric) noexcept;
std::optional<CentralityMetric> parse_metric(std::string_view name) noexcept;

/// One score per node of the source graph, stored in the graph's dense
/// (ascending NodeId) order.
struct CentralityScores {
  CentralityMetric metric{};
  std::vector<NodeId> nodes;
  std::vector<double> values;

  std::size_t size() const noexcept { return nodes.size(); }
  /// Throws GraphError for unknown ids.
  double value(NodeId node) const;
};

/// Nodes by descending score, ties by ascending NodeId.
struct RankedNodes {
  CentralityMetric metric{};
  std::vector<std::pair<NodeId, double>> order;
};

struct EigenvectorOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10'000;
};

/// Power iteration hit its iteration cap. Carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::vector<double> last_iterate, std::size_t iterations);

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  std::size_t iterations_;
};

/// |N(i)| / (n - 1). Requires n >= 2.
CentralityScores degree_centrality(const Graph& g);

/// (n - 1) / sum of distances to reachable nodes. Unreachable nodes are left
/// out of the sum; the numerator stays n - 1. Isolated nodes score 0.
/// Requires n >= 2.
CentralityScores closeness_centrality(const Graph& g);

/// Fraction of shortest paths between unordered pairs {j, k} (j, k != i)
/// that pass through i, normalised by (n - 1)(n - 2) / 2. Brandes
/// accumulation over one BFS per source. Requires n >= 3.
CentralityScores betweenness_centrality(const Graph& g);

/// Principal eigenvector of the adjacency matrix, unit Euclidean norm,
/// non-negative. Requires a connected graph.
///
/// Iterates x <- (A + I) x / |(A + I) x| from the uniform vector. The
/// identity shift leaves the eigenvectors unchanged and makes the
/// iteration converge on bipartite graphs, where plain power iteration
/// oscillates. Stops once the largest per-node change is below the
/// tolerance.
CentralityScores eigenvector_centrality(const Graph& g, const EigenvectorOptions& options = {});

CentralityScores compute_centrality(const Graph& g, CentralityMetric metric,
                                    const EigenvectorOptions& options = {});

/// Top `k` of `scores`. Throws InvalidArgument if k > node count.
RankedNodes rank_nodes(const CentralityScores& scores, std::size_t k);

}  // namespace meshsoc
