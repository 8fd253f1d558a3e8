#include "meshsoc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "meshsoc/error.hpp"
#include "meshsoc/rng.hpp"

namespace meshsoc {

Graph::Graph(std::vector<NodeId> nodes, std::span<const Edge> edges) : ids_(std::move(nodes)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw GraphError("duplicate node id");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    if (a == b) throw GraphError("self-loop on node " + std::to_string(a.value));
    const auto ia = find(a);
    const auto ib = find(b);
    if (!ia || !ib) throw GraphError("edge endpoint is not a node of the graph");
    arcs.emplace_back(static_cast<std::uint32_t>(*ia), static_cast<std::uint32_t>(*ib));
    arcs.emplace_back(static_cast<std::uint32_t>(*ib), static_cast<std::uint32_t>(*ia));
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  offsets_.assign(ids_.size() + 1, 0);
  for (const auto& arc : arcs) ++offsets_[arc.first + 1];
  for (std::size_t i = 0; i < ids_.size(); ++i) offsets_[i + 1] += offsets_[i];
  targets_.reserve(arcs.size());
  for (const auto& arc : arcs) targets_.push_back(arc.second);
}

Graph Graph::with_nodes(std::size_t n, std::span<const Edge> edges) {
  std::vector<NodeId> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = NodeId{static_cast<std::uint32_t>(i)};
  return Graph(std::move(nodes), edges);
}

std::optional<std::size_t> Graph::find(NodeId id) const noexcept {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t Graph::index(NodeId id) const {
  const auto idx = find(id);
  if (!idx) throw GraphError("unknown node " + std::to_string(id.value));
  return *idx;
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
  const auto row = neighbors(a);
  return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(b));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto j : neighbors(i))
      if (i < j) out.emplace_back(ids_[i], ids_[j]);
  return out;
}

std::string Graph::label(std::size_t index) const {
  if (!labels_.empty() && !labels_.at(index).empty()) return labels_[index];
  return std::to_string(id(index).value);
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (labels.size() != ids_.size()) throw GraphError("label count does not match node count");
  labels_ = std::move(labels);
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, std::size_t source) {
  std::vector<std::uint32_t> dist(g.size(), kUnreachable);
  std::vector<std::uint32_t> frontier;
  frontier.reserve(g.size());
  dist.at(source) = 0;
  frontier.push_back(static_cast<std::uint32_t>(source));
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const auto u = frontier[head];
    for (const auto v : g.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      frontier.push_back(v);
    }
  }
  return dist;
}

DistanceMatrix::DistanceMatrix(std::vector<NodeId> ids, std::vector<std::uint32_t> dist)
    : ids_(std::move(ids)), dist_(std::move(dist)) {
  if (dist_.size() != ids_.size() * ids_.size())
    throw GraphError("distance matrix shape mismatch");
}

std::optional<std::uint32_t> DistanceMatrix::hops(NodeId a, NodeId b) const {
  const auto locate = [this](NodeId id) {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw GraphError("unknown node " + std::to_string(id.value));
    return static_cast<std::size_t>(it - ids_.begin());
  };
  return hops(locate(a), locate(b));
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  const auto n = g.size();
  std::vector<std::uint32_t> dist;
  dist.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto row = bfs_distances(g, s);
    dist.insert(dist.end(), row.begin(), row.end());
  }
  return DistanceMatrix({g.ids().begin(), g.ids().end()}, std::move(dist));
}

std::vector<NodeId> k_hop_neighborhood(const Graph& g, NodeId node, unsigned k) {
  if (k == 0) throw GraphError("neighborhood radius must be at least 1");
  const auto source = g.index(node);
  // Truncated BFS: only k levels are expanded.
  std::vector<std::uint32_t> dist(g.size(), kUnreachable);
  std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(source)};
  dist[source] = 0;
  std::vector<NodeId> out;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const auto u = frontier[head];
    if (dist[u] == k) continue;
    for (const auto v : g.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      frontier.push_back(v);
      out.push_back(g.id(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph remove_nodes(const Graph& g, std::span<const NodeId> victims) {
  std::vector<bool> removed(g.size(), false);
  for (const auto v : victims) removed[g.index(v)] = true;

  std::vector<NodeId> nodes;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (removed[i]) continue;
    nodes.push_back(g.id(i));
    if (g.has_labels()) labels.push_back(g.label(i));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (removed[i]) continue;
    for (const auto j : g.neighbors(i))
      if (i < j && !removed[j]) edges.emplace_back(g.id(i), g.id(j));
  }
  Graph out(std::move(nodes), edges);
  if (g.has_labels()) out.set_labels(std::move(labels));
  return out;
}

std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> members{s};
    seen[s] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto v : g.neighbors(members[head])) {
        if (seen[v]) continue;
        seen[v] = true;
        members.push_back(v);
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

std::size_t connected_pairs(const Graph& g) {
  std::size_t pairs = 0;
  for (const auto& c : connected_components(g)) pairs += c.size() * (c.size() - 1) / 2;
  return pairs;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

namespace {

Graph geometric_attempt(std::size_t n, double radius, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<double, double>> points(n);
  for (auto& [x, y] : points) {
    x = rng.uniform01();
    y = rng.uniform01();
  }
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points[i].first - points[j].first;
      const double dy = points[i].second - points[j].second;
      if (dx * dx + dy * dy <= r2)
        edges.emplace_back(NodeId{static_cast<std::uint32_t>(i)},
                           NodeId{static_cast<std::uint32_t>(j)});
    }
  }
  return Graph::with_nodes(n, edges);
}

}  // namespace

Graph random_geometric_graph(std::size_t n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw Error("random geometric graph needs at least 2 nodes");
  if (!(mean_degree > 0.0)) throw Error("target mean degree must be positive");
  const double radius =
      std::sqrt(mean_degree / (std::numbers::pi * static_cast<double>(n - 1)));
  for (std::size_t attempt = 0; attempt < kMaxGeometricAttempts; ++attempt) {
    auto g = geometric_attempt(n, radius, seed + attempt);
    if (is_connected(g)) return g;
  }
  throw Error("no connected geometric graph within " + std::to_string(kMaxGeometricAttempts) +
              " attempts; raise the mean degree");
}

}  // namespace meshsoc
