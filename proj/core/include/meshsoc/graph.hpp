#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace meshsoc {

/// Stable node identifier. The total order on ids is the library-wide
/// tie-breaker (rankings, elections, next-hop selection).
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected, unweighted topology.
///
/// Nodes are stored densely in ascending NodeId order, so a dense index
/// comparison is equivalent to a NodeId comparison. Adjacency is kept in
/// compressed rows with each row sorted ascending.
class Graph {
 public:
  Graph() = default;

  /// Throws GraphError on duplicate nodes, self-loops or edges whose
  /// endpoints are not in `nodes`. Duplicate edges (in either orientation)
  /// are collapsed.
  Graph(std::vector<NodeId> nodes, std::span<const Edge> edges);

  /// Nodes 0..n-1.
  static Graph with_nodes(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  NodeId id(std::size_t index) const { return ids_.at(index); }
  std::span<const NodeId> ids() const noexcept { return ids_; }

  bool contains(NodeId id) const noexcept { return find(id).has_value(); }
  std::optional<std::size_t> find(NodeId id) const noexcept;
  /// Throws GraphError for unknown ids.
  std::size_t index(NodeId id) const;

  std::span<const std::uint32_t> neighbors(std::size_t index) const {
    return {targets_.data() + offsets_.at(index),
            targets_.data() + offsets_.at(index + 1)};
  }
  std::size_t degree(std::size_t index) const {
    return offsets_.at(index + 1) - offsets_.at(index);
  }
  bool adjacent(std::size_t a, std::size_t b) const;

  /// Each edge once, as (smaller id, larger id), sorted.
  std::vector<Edge> edges() const;

  /// Textual label, falling back to the decimal id when none was set.
  std::string label(std::size_t index) const;
  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Labels in dense-index order; size must equal size().
  void set_labels(std::vector<std::string> labels);

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<std::string> labels_;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// BFS hop counts from one source; kUnreachable where no path exists.
std::vector<std::uint32_t> bfs_distances(const Graph& g, std::size_t source);

/// All-pairs hop counts, row-major over dense indices.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<NodeId> ids, std::vector<std::uint32_t> dist);

  std::size_t size() const noexcept { return ids_.size(); }

  /// nullopt when unreachable.
  std::optional<std::uint32_t> hops(std::size_t i, std::size_t j) const {
    const auto d = dist_.at(i * ids_.size() + j);
    return d == kUnreachable ? std::nullopt : std::optional<std::uint32_t>(d);
  }
  std::optional<std::uint32_t> hops(NodeId a, NodeId b) const;

  std::span<const std::uint32_t> row(std::size_t i) const {
    return std::span<const std::uint32_t>(dist_).subspan(i * ids_.size(), ids_.size());
  }

 private:
  std::vector<NodeId> ids_;
  std::vector<std::uint32_t> dist_;
};

DistanceMatrix all_pairs_distances(const Graph& g);

/// Nodes at hop distance 1..k from `node`, ascending. Throws GraphError if
/// `node` is unknown or k == 0.
std::vector<NodeId> k_hop_neighborhood(const Graph& g, NodeId node, unsigned k);

/// Copy of `g` without `victims` and their incident edges. Ids and labels
/// of the survivors are preserved.
Graph remove_nodes(const Graph& g, std::span<const NodeId> victims);

/// Unordered pairs {i, j}, i != j, joined by some path.
std::size_t connected_pairs(const Graph& g);

bool is_connected(const Graph& g);

/// Components as lists of dense indices; each list ascending, lists ordered
/// by their smallest member.
std::vector<std::vector<std::size_t>> connected_components(const Graph& g);

/// Points uniform in the unit square, edge iff distance <= r with
/// r = sqrt(mean_degree / (pi * (n - 1))). Regenerates with seed + 1, seed + 2,
/// ... until connected; throws Error after 1000 attempts.
Graph random_geometric_graph(std::size_t n, double mean_degree, std::uint64_t seed);

inline constexpr std::size_t kMaxGeometricAttempts = 1000;

}  // namespace meshsoc
