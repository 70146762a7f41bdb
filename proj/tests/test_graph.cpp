#include "oracles.hpp"
#include "sminlab/error.hpp"
#include "sminlab/graph.hpp"
#include "sminlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace sminlab;

namespace {

// Vertices are 0-based here: the "star with center 2, leaves 3,4,5,
// isolated vertex 1" is center 1, leaves 2,3,4, isolated 0.
Graph star() { return Graph(5, {{1, 2}, {1, 3}, {1, 4}}); }

Graph complete_without(std::size_t n, std::size_t skip) {
  Graph g(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (j != skip && k != skip) g.add_edge(j, k);
    }
  }
  return g;
}

Graph random_graph(std::uint64_t seed, std::size_t n, std::size_t isolated, double p) {
  Philox rng(SeedSpec{seed, n});
  Graph g(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (j != isolated && k != isolated && rng.uniform01() < p) g.add_edge(j, k);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("graph validation") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), InvalidInput);
  CHECK_THROWS_AS(g.add_edge(0, 3), InvalidInput);
  g.add_edge(2, 0);
  CHECK(g.has_edge(0, 2));
  CHECK(g.edges().front() == Edge{0, 2});
  CHECK_THROWS_AS(g.add_edge(0, 2), InvalidInput);
  CHECK(g.degree(0) == 1);
  CHECK(g.isolated(1));
}

TEST_CASE("edge list text round-trips with 1-based indices") {
  const Graph g = star();
  std::ostringstream os;
  write_edge_list(os, g);
  CHECK(os.str() == "2 3\n2 4\n2 5\n");
  std::istringstream is("# star\n2 3\n\n2 4\n2 5\n");
  CHECK(read_edge_list(is, 5) == g);
  std::istringstream bad("0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad, 5), InvalidInput);
}

TEST_CASE("greedy_decomposition examples") {
  const auto d = greedy_decomposition(star(), 0, 1);
  CHECK(d.S[1] == VertexSet{1});
  CHECK(d.E[1].empty());

  const auto empty = greedy_decomposition(Graph(4), 2, 3);
  for (std::size_t k = 0; k <= 3; ++k) {
    CHECK(empty.S[k].empty());
    CHECK(empty.E[k].empty());
  }

  const auto single = greedy_decomposition(Graph(3, {{1, 2}}), 0, 1);
  CHECK(single.S[1] == VertexSet{1});
  CHECK(single.E[1].empty());

  CHECK_THROWS_AS(greedy_decomposition(star(), 1, 1), InvalidInput);
  CHECK_THROWS_AS(greedy_decomposition(star(), 0, 0), InvalidInput);
  CHECK_THROWS_AS(greedy_decomposition(Graph(17), 0, 1), UnsupportedSize);
  CHECK_NOTHROW(greedy_decomposition(Graph(17), 0, 1, DecompositionMode::greedy));
}

TEST_CASE("vertex_value examples") {
  CHECK(vertex_value(Graph(5), 0, 1) == 0.0);
  CHECK(vertex_value(star(), 0, 1) == doctest::Approx(std::sqrt(3.0) / std::sqrt(2.0)));
  CHECK(vertex_value(star(), 0, 1) == doctest::Approx(1.22474).epsilon(1e-5));
  const Graph k5 = complete_without(6, 0);
  CHECK(k5.edge_count() == 10);
  CHECK(greedy_decomposition(k5, 0, 1).S[1].size() == 2);
  CHECK(vertex_value(k5, 0, 1) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("rho_set examples") {
  CHECK(rho_set(Graph(4), 0, 1).empty());
  CHECK(rho_set(star(), 0, 1) == star().edges());
}

TEST_CASE("check_edge_interval examples") {
  CHECK(check_edge_interval(Graph(4), 0, 2, 1));
  CHECK(check_edge_interval(star(), 0, 1, 1));
  CHECK_THROWS_AS(check_edge_interval(star(), 0, 1, 2), InvalidInput);
  CHECK_THROWS_AS(check_edge_interval(star(), 0, 1, 0), InvalidInput);
}

TEST_CASE("min_half_cover") {
  CHECK(min_half_cover({}, 4) == 0);
  CHECK(min_half_cover(star().edges(), 5) == 1);
  // A perfect matching of 4 edges needs 2 vertices to reach half.
  CHECK(min_half_cover({{0, 1}, {2, 3}, {4, 5}, {6, 7}}, 8) == 2);
}

TEST_CASE("two_graphs_dichotomy examples") {
  const auto r = two_graphs_dichotomy(Graph(5), Graph(5), 0, 1);
  CHECK(r.value == 0.0);
  CHECK(r.small_value);
  CHECK(r.holds());

  const auto s = two_graphs_dichotomy(star(), star(), 0, 1);
  CHECK(s.value == doctest::Approx(1.22474).epsilon(1e-5));
  CHECK(s.small_value);

  // |E \ E~| = 3 > 25/16.
  CHECK_THROWS_AS(two_graphs_dichotomy(star(), Graph(5), 0, 1), PreconditionError);
}

TEST_CASE("decomposition agrees with the exhaustive oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 4 + seed % 7;
    const std::size_t i = seed % n;
    const Graph g = random_graph(seed, n, i, 0.2 + 0.02 * static_cast<double>(seed % 30));
    const std::size_t L = 1 + seed % 2;
    const auto mine = greedy_decomposition(g, i, 4 * L);
    const auto ref = oracle::decompose(g.edges(), n, 4 * L);
    CAPTURE(seed);
    for (std::size_t k = 0; k <= 4 * L; ++k) {
      CHECK(mine.S[k] == ref.S[k]);
      CHECK(mine.E[k] == ref.edges[k]);
    }
    CHECK(vertex_value(g, i, L) == doctest::Approx(oracle::vertex_value(g.edges(), n, L)));
    CHECK(rho_set(g, i, L) == oracle::rho(g.edges(), n, L));
    CHECK(min_half_cover(g.edges(), n) == oracle::min_half_cover(g.edges(), n));
  }
}

TEST_CASE("property: decomposition invariants in both modes") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const std::size_t n = 3 + seed % 10;
    const std::size_t i = seed % n;
    const Graph g = random_graph(seed, n, i, 0.5);
    for (auto mode : {DecompositionMode::exact, DecompositionMode::greedy}) {
      const auto d = greedy_decomposition(g, i, 6, mode);
      CHECK(d.E[0] == g.edges());
      for (std::size_t k = 1; k <= 6; ++k) {
        CHECK(2 * d.E[k].size() <= d.E[k - 1].size());
        CHECK(std::includes(d.S[k].begin(), d.S[k].end(), d.S[k - 1].begin(), d.S[k - 1].end()));
        CHECK(d.E[k] == edges_avoiding(g.edges(), d.S[k]));
      }
    }
  }
}

TEST_CASE("property: exact mode is minimal at every step") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    const std::size_t n = 4 + seed % 9;  // up to 12
    const std::size_t i = seed % n;
    const Graph g = random_graph(seed, n, i, 0.4);
    const auto d = greedy_decomposition(g, i, 5);
    for (std::size_t k = 1; k <= 5; ++k) {
      const std::size_t inc = d.increment(k);
      if (inc == 0) continue;
      // No superset of S_{k-1} with fewer added vertices halves E_{k-1}.
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) >= inc) continue;
        VertexSet s = d.S[k - 1];
        for (std::size_t v = 0; v < n; ++v) {
          if ((mask >> v) & 1) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        CHECK(2 * edges_avoiding(g.edges(), s).size() > d.E[k - 1].size());
      }
    }
  }
}

TEST_CASE("property: greedy mode never beats exact mode in size") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const std::size_t n = 5 + seed % 8;
    const Graph g = random_graph(seed, n, 0, 0.6);
    const auto exact = greedy_decomposition(g, 0, 1);
    const auto greedy = greedy_decomposition(g, 0, 1, DecompositionMode::greedy);
    CHECK(greedy.S[1].size() >= exact.S[1].size());
  }
}
