#pragma once

// Graph builders and brute-force oracles shared by the test binaries. The
// oracles only read adjacency; they never call the library's BFS, Brandes or
// power-iteration code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "meshsoc/graph.hpp"
#include "meshsoc/rng.hpp"

namespace meshsoc::testing {

inline NodeId N(std::uint32_t v) { return NodeId{v}; }

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.emplace_back(N(i), N(i + 1));
  return Graph::with_nodes(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(N(i), N(static_cast<std::uint32_t>((i + 1) % n)));
  return Graph::with_nodes(n, e);
}

/// Node 0 is the centre.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i <= leaves; ++i) e.emplace_back(N(0), N(i));
  return Graph::with_nodes(leaves + 1, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.emplace_back(N(i), N(j));
  return Graph::with_nodes(n, e);
}

/// G(n, p) from a seeded SplitMix64.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) e.emplace_back(N(i), N(j));
  return Graph::with_nodes(n, e);
}

/// Adjacency as a dense boolean matrix, read through Graph::adjacent only.
inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<bool>> a(g.size(), std::vector<bool>(g.size(), false));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = g.adjacent(i, j);
  return a;
}

inline bool brute_connected(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const auto n = g.size();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    seen[u] = true;
    for (std::size_t v = 0; v < n; ++v)
      if (a[u][v] && !seen[v]) dfs(v);
  };
  dfs(0);
  return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

/// Random connected G(n, p), re-drawing until connected.
inline Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    auto g = random_graph(n, p, seed * 7919 + k);
    if (brute_connected(g)) return g;
  }
}

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// Floyd-Warshall hop counts.
inline std::vector<std::vector<std::uint32_t>> floyd_warshall(const Graph& g) {
  const auto n = g.size();
  const auto a = adjacency_matrix(g);
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != kInf && d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Every simple path from s to t, as node-index sequences (exponential; for
/// tiny graphs only).
inline std::vector<std::vector<std::size_t>> all_simple_paths(const Graph& g, std::size_t s,
                                                              std::size_t t) {
  const auto a = adjacency_matrix(g);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path{s};
  std::vector<bool> on_path(g.size(), false);
  on_path[s] = true;
  std::function<void(std::size_t)> walk = [&](std::size_t u) {
    if (u == t) {
      out.push_back(path);
      return;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!a[u][v] || on_path[v]) continue;
      on_path[v] = true;
      path.push_back(v);
      walk(v);
      path.pop_back();
      on_path[v] = false;
    }
  };
  walk(s);
  return out;
}

/// Shortest paths between s and t, by filtering every simple path.
inline std::vector<std::vector<std::size_t>> all_shortest_paths(const Graph& g, std::size_t s,
                                                                std::size_t t) {
  auto paths = all_simple_paths(g, s, t);
  if (paths.empty()) return paths;
  std::size_t best = paths.front().size();
  for (const auto& p : paths) best = std::min(best, p.size());
  std::erase_if(paths, [best](const auto& p) { return p.size() != best; });
  return paths;
}

/// Betweenness by explicit enumeration of every shortest path of every
/// unordered pair, normalised by (n-1)(n-2)/2.
inline std::vector<double> brute_force_betweenness(const Graph& g) {
  const auto n = g.size();
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const auto paths = all_shortest_paths(g, j, k);
      if (paths.empty()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        std::size_t through = 0;
        for (const auto& p : paths)
          if (std::find(p.begin() + 1, p.end() - 1, i) != p.end() - 1) ++through;
        b[i] += static_cast<double>(through) / static_cast<double>(paths.size());
      }
    }
  }
  const double pairs = static_cast<double>((n - 1) * (n - 2)) / 2.0;
  for (auto& v : b) v /= pairs;
  return b;
}

/// Graph with node i renamed to perm[i] (perm is a permutation of 0..n-1).
inline Graph relabel(const Graph& g, const std::vector<std::uint32_t>& perm) {
  std::vector<Edge> e;
  for (const auto& [a, b] : g.edges()) e.emplace_back(N(perm[a.value]), N(perm[b.value]));
  return Graph::with_nodes(g.size(), e);
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  SplitMix64 rng(seed);
  shuffle(perm, rng);
  return perm;
}

}  // namespace meshsoc::testing
