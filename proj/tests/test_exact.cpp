#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ising/exact.hpp"
#include "ising/rng.hpp"

using namespace ising;

namespace {

Graph torus(int rows, int cols) {
  GraphSpec s;
  s.topology = Topology::lattice2d_torus;
  s.rows = rows;
  s.cols = cols;
  s.order = NeighborhoodOrder::first;
  return build(s);
}

Graph chain(int n) {
  GraphSpec s;
  s.topology = Topology::circular_chain;
  s.rows = n;
  s.cols = 1;
  return build(s);
}

}  // namespace

TEST_CASE("1-NN closed form collapses at beta = 0") {
  CHECK(log_z_1nn(0.0, 0.0, 100) ==
        doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-13));
  // Z(alpha, 0) = (1 + e^alpha)^n
  CHECK(log_z_1nn(2.0, 0.0, 10) ==
        doctest::Approx(10.0 * std::log(1.0 + std::exp(2.0))).epsilon(1e-13));
}

TEST_CASE("brute force on a single free vertex") {
  const auto g = Graph::from_adjacency({{}}, 0);
  for (double alpha : {-1.0, 0.0, 1.7}) {
    const auto r = brute_force(g, alpha, 0.3);
    CHECK(r.log_z == doctest::Approx(std::log(1.0 + std::exp(alpha))).epsilon(1e-12));
    CHECK(r.m_active ==
          doctest::Approx(std::exp(alpha) / (1.0 + std::exp(alpha))).epsilon(1e-12));
    CHECK(r.s_spin == doctest::Approx(0.0));
  }
}

TEST_CASE("brute force on the 4-cycle") {
  const auto g = chain(4);
  {
    const auto r = brute_force(g, 0.0, 0.0);
    CHECK(r.log_z == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(r.m_active == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.matches == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    // 1-NN formula is a large-n asymptotic; report its gap at n = 4.
    const auto r = brute_force(g, 0.0, 1.0);
    const double approx = log_z_1nn(0.0, 1.0, 4);
    MESSAGE("1-NN asymptotic vs exact at n=4: ", approx, " vs ", r.log_z,
            " (rel err ", std::fabs(approx - r.log_z) / r.log_z, ")");
    CHECK(std::isfinite(approx));
  }
}

TEST_CASE("brute force: beta = 0 closed form") {
  const auto g = torus(4, 4);
  for (double alpha : {0.0, 0.8, 3.0}) {
    const auto r = brute_force(g, alpha, 0.0);
    CHECK(r.log_z ==
          doctest::Approx(16.0 * std::log(1.0 + std::exp(alpha))).epsilon(1e-10));
  }
}

TEST_CASE("brute force: reflection identity over random parameter draws") {
  const auto g4 = torus(4, 4);
  const auto gc = chain(12);
  RngStream rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const double alpha = 3.0 * rng.next_double();
    const double beta = 1.5 * rng.next_double();
    const Graph& g = (rep % 2 == 0) ? g4 : gc;
    const auto pos = brute_force(g, alpha, beta);
    const auto neg = brute_force(g, -alpha, beta);
    CHECK(neg.log_z ==
          doctest::Approx(pos.log_z - alpha * g.n).epsilon(1e-12));
  }
}

TEST_CASE("brute force: complement symmetry at alpha = 0") {
  const auto g = torus(4, 5);
  const auto r = brute_force(g, 0.0, 0.4);
  CHECK(r.m_active == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("brute force: matches identity on regular graphs") {
  const auto g = torus(4, 5);
  const auto r = brute_force(g, 1.0, 0.3);
  const double lhs = r.matches;
  const double rhs = g.m - (g.k_nominal * r.m_active - 2.0 * r.s_spin);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("1-NN asymptotic error shrinks with n on circular chains") {
  double prev = 1e9;
  for (int n : {8, 12, 16, 20}) {
    const auto exact = brute_force(chain(n), 1.0, 0.5);
    const double approx = log_z_1nn(1.0, 0.5, n);
    const double rel = std::fabs(approx - exact.log_z) / exact.log_z;
    CHECK(rel < prev);
    prev = rel;
  }
}

TEST_CASE("brute force refuses n > 24") {
  GraphSpec s;
  s.topology = Topology::circular_chain;
  s.rows = 25;
  s.cols = 1;
  const auto g = build(s);
  CHECK_THROWS_AS(brute_force(g, 0.0, 0.0), std::invalid_argument);
}
