#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ising/graph.hpp"
#include "ising/rng.hpp"

using namespace ising;

namespace {

GraphSpec spec_of(Topology t, int rows, int cols, NeighborhoodOrder o) {
  GraphSpec s;
  s.topology = t;
  s.rows = rows;
  s.cols = cols;
  s.order = o;
  return s;
}

}  // namespace

TEST_CASE("circular chain n=4 is the 4-cycle") {
  const auto g = build(spec_of(Topology::circular_chain, 4, 1,
                               NeighborhoodOrder::first));
  CHECK(g.n == 4);
  CHECK(g.m == 4);
  CHECK(g.k_nominal == 2);
  for (int d : g.degrees) CHECK(d == 2);
}

TEST_CASE("4x4 torus first order is 4-regular with m = 32") {
  const auto g = build(spec_of(Topology::lattice2d_torus, 4, 4,
                               NeighborhoodOrder::first));
  CHECK(g.n == 16);
  CHECK(g.k_nominal == 4);
  CHECK(g.m == 32);
  for (int d : g.degrees) CHECK(d == 4);
}

TEST_CASE("64x64 free second order: edge count against the closed form") {
  const auto g = build(spec_of(Topology::lattice2d_free, 64, 64,
                               NeighborhoodOrder::second));
  CHECK(g.n == 4096);
  CHECK(g.k_nominal == 8);
  // horizontal + vertical + two diagonal families
  const std::int64_t expect = 64 * 63 + 63 * 64 + 2 * 63 * 63;
  CHECK(g.m == expect);
  CHECK(g.m < g.m_nominal());
  CHECK(g.m_nominal() == 16384);
}

TEST_CASE("fifth order free lattice: interior degree 24, m below nominal") {
  const auto g = build(spec_of(Topology::lattice2d_free, 8, 9,
                               NeighborhoodOrder::fifth));
  CHECK(g.k_nominal == 24);
  // interior vertex (row 3, col 4)
  CHECK(g.degrees[3 * 9 + 4] == 24);
  CHECK(g.m < g.m_nominal());
  // degree sum identity
  std::int64_t sum = 0;
  for (int d : g.degrees) sum += d;
  CHECK(sum == 2 * g.m);
}

TEST_CASE("torus too small for the neighborhood order is rejected") {
  CHECK_THROWS_AS(build(spec_of(Topology::lattice2d_torus, 4, 4,
                                NeighborhoodOrder::fifth)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build(spec_of(Topology::lattice2d_torus, 2, 2,
                                NeighborhoodOrder::first)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build(spec_of(Topology::circular_chain, 2, 1,
                                NeighborhoodOrder::first)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build(spec_of(Topology::lattice2d_free, 1, 5,
                                NeighborhoodOrder::first)),
                  std::invalid_argument);
}

TEST_CASE("5x5 torus fifth order is 24-regular (complete-ish wrap)") {
  const auto g = build(spec_of(Topology::lattice2d_torus, 5, 5,
                               NeighborhoodOrder::fifth));
  for (int d : g.degrees) CHECK(d == 24);
  CHECK(g.m == g.m_nominal());
}

TEST_CASE("match statistics on canonical states") {
  const auto g = build(spec_of(Topology::lattice2d_torus, 4, 4,
                               NeighborhoodOrder::first));
  {
    std::vector<std::uint8_t> zeros(16, 0);
    const auto s = match_statistics(g, zeros);
    CHECK(s.active == 0);
    CHECK(s.matches == g.m);
    CHECK(s.nonmatches == 0);
    CHECK(s.spin == 0);
  }
  {
    std::vector<std::uint8_t> ones(16, 1);
    const auto s = match_statistics(g, ones);
    CHECK(s.active == 16);
    CHECK(s.matches == 32);
    CHECK(s.nonmatches == 0);
    CHECK(s.spin == 32);
  }
  {
    std::vector<std::uint8_t> checker(16);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) checker[r * 4 + c] = (r + c) % 2;
    const auto s = match_statistics(g, checker);
    CHECK(s.active == 8);
    CHECK(s.matches == 0);
    CHECK(s.nonmatches == 32);
    CHECK(s.spin == 0);
  }
}

TEST_CASE("match statistics identity over random states, every topology") {
  const GraphSpec specs[] = {
      spec_of(Topology::circular_chain, 30, 1, NeighborhoodOrder::first),
      spec_of(Topology::lattice2d_free, 8, 7, NeighborhoodOrder::second),
      spec_of(Topology::lattice2d_torus, 6, 6, NeighborhoodOrder::second),
      spec_of(Topology::lattice2d_free, 9, 8, NeighborhoodOrder::fifth),
  };
  RngStream rng(12345);
  for (const auto& spec : specs) {
    const auto g = build(spec);
    for (int rep = 0; rep < 1000; ++rep) {
      std::vector<std::uint8_t> x(g.n);
      for (auto& v : x) v = rng.next_u64() & 1;
      const auto s = match_statistics(g, x);
      std::int64_t weighted = 0;
      for (int i = 0; i < g.n; ++i) weighted += g.degrees[i] * x[i];
      CHECK(s.nonmatches == weighted - 2 * s.spin);
      CHECK(s.matches + s.nonmatches == g.m);
      // complement invariance of matches
      std::vector<std::uint8_t> xc(g.n);
      for (int i = 0; i < g.n; ++i) xc[i] = 1 - x[i];
      CHECK(match_statistics(g, xc).matches == s.matches);
    }
  }
}

TEST_CASE("match statistics rejects wrong length") {
  const auto g = build_circulant(10, 4);
  std::vector<std::uint8_t> x(9, 0);
  CHECK_THROWS_AS(match_statistics(g, x), std::invalid_argument);
}

TEST_CASE("from_adjacency validates structure") {
  CHECK_THROWS_AS(Graph::from_adjacency({{0}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_adjacency({{1}, {}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_adjacency({{1, 1}, {0, 0}}, 2),
                  std::invalid_argument);
  const auto g = Graph::from_adjacency({{1}, {0, 2}, {1}}, 2);
  CHECK(g.m == 2);
  CHECK(g.degrees[1] == 2);
}

TEST_CASE("circulant graph is k-regular") {
  const auto g = build_circulant(12, 4);
  CHECK(g.m == 24);
  for (int d : g.degrees) CHECK(d == 4);
  CHECK_THROWS_AS(build_circulant(10, 3), std::invalid_argument);
}
