#include <doctest.h>

#include <set>

#include "meshsoc/error.hpp"
#include "meshsoc/graph.hpp"
#include "meshsoc/topology_io.hpp"
#include "test_support.hpp"

using namespace meshsoc;
using meshsoc::testing::N;

TEST_CASE("edge list: path A-B-C") {
  const auto g = parse_edge_list("A B\nB C");
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.label(0) == "A");
  CHECK(g.label(1) == "B");
  CHECK(g.label(2) == "C");
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("edge list: duplicate in reverse orientation collapses") {
  const auto g = parse_edge_list("A B\nB A");
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("edge list: self-loop is rejected with its line number") {
  try {
    parse_edge_list("# header\nA B\nA A\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("edge list: malformed lines report line numbers") {
  try {
    parse_edge_list("A B\n\nC\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_edge_list("A B C"), ParseError);
}

TEST_CASE("edge list: comments, blank lines, CRLF and tabs") {
  const auto g = parse_edge_list("# UCSB subnet\r\n10.2.1.5\t10.2.1.106\r\n\r\n10.2.1.106 10.2.1.100\r\n");
  CHECK(g.size() == 3);
  CHECK(g.label(0) == "10.2.1.5");
  CHECK(g.label(2) == "10.2.1.100");
}

TEST_CASE("edge list: format then parse preserves structure") {
  const auto g = random_geometric_graph(40, 6.0, 11);
  const auto h = parse_edge_list(format_edge_list(g));
  CHECK(h.size() == g.size());
  CHECK(h.edge_count() == g.edge_count());
  for (const auto& [a, b] : g.edges()) {
    // h's ids follow first appearance; labels carry g's ids.
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h.label(i) == std::to_string(a.value)) ia = i;
      if (h.label(i) == std::to_string(b.value)) ib = i;
    }
    CHECK(h.adjacent(ia, ib));
  }
}

TEST_CASE("graph construction enforces invariants") {
  const Edge loop{N(1), N(1)};
  CHECK_THROWS_AS(Graph::with_nodes(2, std::span<const Edge>(&loop, 1)), GraphError);
  const Edge dangling{N(0), N(5)};
  CHECK_THROWS_AS(Graph::with_nodes(2, std::span<const Edge>(&dangling, 1)), GraphError);
  CHECK_THROWS_AS(Graph({N(1), N(1)}, {}), GraphError);
  CHECK_THROWS_AS(meshsoc::testing::path_graph(3).index(N(9)), GraphError);
}

TEST_CASE("all_pairs_distances examples") {
  using meshsoc::testing::path_graph;
  const auto p3 = path_graph(3);
  CHECK(all_pairs_distances(p3).hops(N(0), N(2)) == 2u);

  const auto two = Graph::with_nodes(2, {});
  CHECK_FALSE(all_pairs_distances(two).hops(N(0), N(1)).has_value());

  // C5: oracle is the shortest of all simple paths between 0 and 2.
  const auto c5 = meshsoc::testing::cycle_graph(5);
  const auto paths = meshsoc::testing::all_simple_paths(c5, 0, 2);
  std::size_t shortest = paths.front().size();
  for (const auto& p : paths) shortest = std::min(shortest, p.size());
  REQUIRE(shortest - 1 == 2);
  CHECK(all_pairs_distances(c5).hops(N(0), N(2)) == 2u);
}

TEST_CASE("k_hop_neighborhood examples") {
  const auto star = meshsoc::testing::star_graph(4);
  CHECK(k_hop_neighborhood(star, N(0), 1) == std::vector<NodeId>{N(1), N(2), N(3), N(4)});

  const auto p4 = meshsoc::testing::path_graph(4);
  CHECK(k_hop_neighborhood(p4, N(0), 2) == std::vector<NodeId>{N(1), N(2)});

  const auto isolated = Graph::with_nodes(3, {});
  CHECK(k_hop_neighborhood(isolated, N(1), 2).empty());

  CHECK_THROWS_AS(k_hop_neighborhood(p4, N(7), 1), GraphError);
  CHECK_THROWS_AS(k_hop_neighborhood(p4, N(0), 0), GraphError);
}

TEST_CASE("remove_nodes examples") {
  const auto star = meshsoc::testing::star_graph(4);
  const NodeId centre = N(0);
  const auto leaves = remove_nodes(star, std::span<const NodeId>(&centre, 1));
  CHECK(leaves.size() == 4);
  CHECK(leaves.edge_count() == 0);
  CHECK(star.edge_count() == 4);  // input untouched

  const auto same = remove_nodes(star, {});
  CHECK(same.edges() == star.edges());
  CHECK(std::vector<NodeId>(same.ids().begin(), same.ids().end()) ==
        std::vector<NodeId>(star.ids().begin(), star.ids().end()));

  const auto p3 = meshsoc::testing::path_graph(3);
  const NodeId c = N(2);
  const auto ab = remove_nodes(p3, std::span<const NodeId>(&c, 1));
  CHECK(ab.size() == 2);
  CHECK(ab.edges() == std::vector<Edge>{{N(0), N(1)}});

  const NodeId ghost = N(42);
  CHECK_THROWS_AS(remove_nodes(p3, std::span<const NodeId>(&ghost, 1)), GraphError);
}

TEST_CASE("remove_nodes keeps ids and labels of survivors") {
  const auto g = parse_edge_list("x y\ny z\nz w");
  const NodeId y = N(1);
  const auto h = remove_nodes(g, std::span<const NodeId>(&y, 1));
  REQUIRE(h.size() == 3);
  CHECK(h.id(1) == N(2));
  CHECK(h.label(1) == "z");
  CHECK(h.adjacent(1, 2));
}

TEST_CASE("connected_pairs examples") {
  CHECK(connected_pairs(meshsoc::testing::complete_graph(5)) == 10);
  const std::vector<Edge> two_edges{{N(0), N(1)}, {N(2), N(3)}};
  CHECK(connected_pairs(Graph::with_nodes(4, two_edges)) == 2);
  CHECK(connected_pairs(Graph{}) == 0);
}

TEST_CASE("random_geometric_graph is a pure function of its arguments") {
  const auto a = random_geometric_graph(120, 8.0, 99);
  const auto b = random_geometric_graph(120, 8.0, 99);
  CHECK(a.edges() == b.edges());
  CHECK(random_geometric_graph(120, 8.0, 100).edges() != a.edges());
}

TEST_CASE("random_geometric_graph: n=200, mean degree 8 over 20 seeds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = random_geometric_graph(200, 8.0, seed);
    CHECK(is_connected(g));
    const double mean = 2.0 * static_cast<double>(g.edge_count()) / 200.0;
    CHECK(mean >= 6.0);
    CHECK(mean <= 10.0);
  }
}

TEST_CASE("random_geometric_graph edge cases") {
  const auto g = random_geometric_graph(2, 1000.0, 5);
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(random_geometric_graph(1, 4.0, 1), Error);
  CHECK_THROWS_AS(random_geometric_graph(10, 0.0, 1), Error);
  CHECK_THROWS_AS(random_geometric_graph(200, 0.05, 1), Error);  // never connects
}

TEST_CASE("property: distance matrix against Floyd-Warshall on random graphs") {
  using namespace meshsoc::testing;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto g = random_graph(n, 0.35, seed);
    const auto dm = all_pairs_distances(g);
    const auto oracle = floyd_warshall(g);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto d = dm.hops(i, j);
        if (oracle[i][j] == kInf) {
          CHECK_FALSE(d.has_value());
          continue;
        }
        REQUIRE(d.has_value());
        CHECK(*d == oracle[i][j]);
        CHECK(dm.hops(j, i) == d);
        CHECK((*d == 1) == g.adjacent(i, j));
        for (std::size_t k = 0; k < n; ++k) {
          const auto ik = dm.hops(i, k);
          const auto kj = dm.hops(k, j);
          if (ik && kj) CHECK(*d <= *ik + *kj);
        }
      }
    }
  }
}

TEST_CASE("property: relabelling permutes the distance matrix") {
  using namespace meshsoc::testing;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const auto g = random_graph(n, 0.4, seed + 1000);
    const auto perm = random_permutation(n, seed);
    const auto h = relabel(g, perm);
    const auto dg = all_pairs_distances(g);
    const auto dh = all_pairs_distances(h);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(dh.hops(perm[i], perm[j]) == dg.hops(i, j));
  }
}

TEST_CASE("property: 2-hop neighbourhood contains 1-hop; removal never adds edges") {
  using namespace meshsoc::testing;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 9;
    const auto g = random_graph(n, 0.3, seed + 5000);
    for (std::size_t i = 0; i < n; ++i) {
      const auto one = k_hop_neighborhood(g, g.id(i), 1);
      const auto two = k_hop_neighborhood(g, g.id(i), 2);
      CHECK(std::includes(two.begin(), two.end(), one.begin(), one.end()));
      CHECK(one.size() == g.degree(i));
    }
    SplitMix64 rng(seed);
    std::vector<NodeId> victims;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.uniform01() < 0.3) victims.push_back(g.id(i));
    const auto h = remove_nodes(g, victims);
    const auto all = g.edges();
    const std::set<Edge> before(all.begin(), all.end());
    for (const auto& e : h.edges()) CHECK(before.count(e) == 1);
    CHECK(h.size() == n - victims.size());
  }
}
