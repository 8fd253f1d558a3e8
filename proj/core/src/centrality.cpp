#include "meshsoc/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meshsoc {

namespace {

CentralityScores make_scores(const Graph& g, CentralityMetric metric) {
  CentralityScores s;
  s.metric = metric;
  s.nodes.assign(g.ids().begin(), g.ids().end());
  s.values.assign(g.size(), 0.0);
  return s;
}

void require_nodes(const Graph& g, std::size_t minimum, CentralityMetric metric) {
  if (g.size() < minimum)
    throw InvalidArgument(std::string(to_string(metric)) + " centrality needs at least " +
                          std::to_string(minimum) + " nodes");
}

}  // namespace

std::string_view to_string(CentralityMetric metric) noexcept {
  switch (metric) {
    case CentralityMetric::Degree: return "degree";
    case CentralityMetric::Closeness: return "closeness";
    case CentralityMetric::Betweenness: return "betweenness";
    case CentralityMetric::Eigenvector: return "eigenvector";
  }
  return "unknown";
}

std::optional<CentralityMetric> parse_metric(std::string_view name) noexcept {
  for (const auto m : kAllMetrics)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

double CentralityScores::value(NodeId node) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
  if (it == nodes.end() || *it != node)
    throw GraphError("no score for node " + std::to_string(node.value));
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

ConvergenceError::ConvergenceError(std::vector<double> last_iterate, std::size_t iterations)
    : Error("eigenvector power iteration did not converge after " + std::to_string(iterations) +
            " iterations"),
      last_iterate_(std::move(last_iterate)),
      iterations_(iterations) {}

CentralityScores degree_centrality(const Graph& g) {
  require_nodes(g, 2, CentralityMetric::Degree);
  auto s = make_scores(g, CentralityMetric::Degree);
  const double denom = static_cast<double>(g.size() - 1);
  for (std::size_t i = 0; i < g.size(); ++i) s.values[i] = static_cast<double>(g.degree(i)) / denom;
  return s;
}

CentralityScores closeness_centrality(const Graph& g) {
  require_nodes(g, 2, CentralityMetric::Closeness);
  auto s = make_scores(g, CentralityMetric::Closeness);
  const double numerator = static_cast<double>(g.size() - 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::uint64_t total = 0;
    for (const auto d : bfs_distances(g, i))
      if (d != kUnreachable) total += d;
    s.values[i] = total == 0 ? 0.0 : numerator / static_cast<double>(total);
  }
  return s;
}

CentralityScores betweenness_centrality(const Graph& g) {
  require_nodes(g, 3, CentralityMetric::Betweenness);
  const auto n = g.size();
  auto s = make_scores(g, CentralityMetric::Betweenness);

  std::vector<std::uint32_t> order;
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  order.reserve(n);

  for (std::size_t source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();

    dist[source] = 0;
    sigma[source] = 1.0;
    order.push_back(static_cast<std::uint32_t>(source));
    for (std::size_t head = 0; head < order.size(); ++head) {
      const auto u = order[head];
      for (const auto v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          order.push_back(v);
        }
        if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
      }
    }

    // Dependencies in reverse BFS order; predecessors are the neighbours one
    // level closer to the source.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (const auto v : g.neighbors(w))
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != source) s.values[w] += delta[w];
    }
  }

  // Each unordered pair was visited from both ends.
  const double pairs = static_cast<double>((n - 1) * (n - 2)) / 2.0;
  for (auto& v : s.values) v = v / 2.0 / pairs;
  return s;
}

CentralityScores eigenvector_centrality(const Graph& g, const EigenvectorOptions& options) {
  if (g.empty()) throw InvalidArgument("eigenvector centrality of an empty graph");
  if (!is_connected(g)) throw InvalidArgument("eigenvector centrality needs a connected graph");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");

  const auto n = g.size();
  auto s = make_scores(g, CentralityMetric::Eigenvector);
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);

  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = x[i];
      for (const auto j : g.neighbors(i)) acc += x[j];
      next[i] = acc;
      norm2 += acc * acc;
    }
    const double norm = std::sqrt(norm2);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      change = std::max(change, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (change < options.tolerance) {
      s.values = std::move(x);
      return s;
    }
  }
  throw ConvergenceError(std::move(x), options.max_iterations);
}

CentralityScores compute_centrality(const Graph& g, CentralityMetric metric,
                                    const EigenvectorOptions& options) {
  switch (metric) {
    case CentralityMetric::Degree: return degree_centrality(g);
    case CentralityMetric::Closeness: return closeness_centrality(g);
    case CentralityMetric::Betweenness: return betweenness_centrality(g);
    case CentralityMetric::Eigenvector: return eigenvector_centrality(g, options);
  }
  throw InvalidArgument("unknown centrality metric");
}

RankedNodes rank_nodes(const CentralityScores& scores, std::size_t k) {
  if (k > scores.size())
    throw InvalidArgument("cannot rank top " + std::to_string(k) + " of " +
                          std::to_string(scores.size()) + " nodes");
  RankedNodes ranked;
  ranked.metric = scores.metric;
  ranked.order.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    ranked.order.emplace_back(scores.nodes[i], scores.values[i]);
  const auto before = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  std::partial_sort(ranked.order.begin(), ranked.order.begin() + static_cast<std::ptrdiff_t>(k),
                    ranked.order.end(), before);
  ranked.order.resize(k);
  return ranked;
}

}  // namespace meshsoc
