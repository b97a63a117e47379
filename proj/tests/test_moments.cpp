#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ising/exact.hpp"
#include "ising/moments.hpp"

using namespace ising;

TEST_CASE("activation saturates under a strong field") {
  const double m = m_phi({5.0, 0.005}, 4096, 8);
  CHECK(m >= 0.99 * 4096);
  CHECK(m <= 4096.0);
  const double mt = m_tilde_phi({5.0, 0.005}, 4096, 8);
  CHECK(mt >= 0.99 * 4096);
}

TEST_CASE("activation is half the lattice in the symmetric regime") {
  CHECK(std::fabs(m_phi({0.0, 0.005}, 4096, 4) / 4096.0 - 0.5) <= 0.02);
  CHECK(std::fabs(m_tilde_phi({0.0, 0.005}, 4096, 4) / 4096.0 - 0.5) <= 0.02);
  // symmetry within 2% of n/2 on the disordered side of the coupling
  for (double beta : {0.05, 0.1, 0.2}) {
    CHECK(std::fabs(m_tilde_phi({0.0, beta}, 4096, 8) - 2048.0) / 2048.0 <=
          0.02);
  }
  // near the critical coupling the window machinery is not
  // complement-symmetric; record the drift
  MESSAGE("alpha=0, beta=0.5, k=8: M/n = ",
          m_tilde_phi({0.0, 0.5}, 4096, 8) / 4096.0);
}

TEST_CASE("series and integral activation estimates agree pointwise") {
  const int n = 4096, k = 8;
  for (double alpha : {0.27, 1.0, 3.0, 5.0}) {
    for (double beta : {0.005, 0.1, 0.9, 4.0}) {
      const IsingParams p{alpha, beta};
      const double a = m_phi(p, n, k);
      const double b = m_tilde_phi(p, n, k);
      CHECK(std::fabs(a - b) / a <= 1e-2);
    }
  }
}

TEST_CASE("activation is nondecreasing along an alpha ladder") {
  double prev = -1.0;
  for (double alpha : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double m = m_tilde_phi({alpha, 0.1}, 4096, 8);
    CHECK(m >= prev - 1e-9);
    prev = m;
  }
}

TEST_CASE("spin saturates at the edge count for strong coupling and field") {
  const double m_nom = 4096.0 * 8 / 2;
  const double s = s_tilde_phi({5.0, 10.0}, 4096, 8);
  CHECK(std::fabs(s - m_nom) / m_nom <= 0.01);
  const double s2 = s_phi({5.0, 10.0}, 4096, 8);
  CHECK(std::fabs(s2 - m_nom) / m_nom <= 0.01);
}

TEST_CASE("independent-sites limit: spin fraction is a quarter") {
  const double m_nom = 1000.0 * 4 / 2;
  const double s = s_tilde_phi({0.0, 1e-8}, 1000, 4);
  CHECK(std::fabs(s / m_nom - 0.25) <= 0.02);
}

TEST_CASE("series and integral spin estimates agree within 5%") {
  const int n = 4096, k = 8;
  for (double alpha : {0.27, 1.0, 3.0, 5.0}) {
    for (double beta : {0.005, 0.1, 0.9, 4.0}) {
      const IsingParams p{alpha, beta};
      const double a = s_phi(p, n, k);
      const double b = s_tilde_phi(p, n, k);
      CHECK(std::fabs(a - b) / a <= 5e-2);
    }
  }
}

TEST_CASE("spin vs brute force on the 4x5 torus (error recorded)") {
  GraphSpec spec;
  spec.topology = Topology::lattice2d_torus;
  spec.rows = 4;
  spec.cols = 5;
  const auto g = build(spec);
  const auto exact = brute_force(g, 1.0, 0.3);
  const double est = s_phi({1.0, 0.3}, g.n, g.k_nominal);
  MESSAGE("S_phi vs exact at n=20: ", est, " vs ", exact.s_spin, " (rel ",
          std::fabs(est - exact.s_spin) / exact.s_spin, ")");
  CHECK(std::isfinite(est));
}

TEST_CASE("moment estimates stay in their physical ranges across the grid") {
  const int n = 4096;
  for (int k : {4, 8, 24}) {
    for (double alpha : {0.27, 2.5, 5.0}) {
      for (double beta : {0.005, 0.3, 2.0, 10.0}) {
        const IsingParams p{alpha, beta};
        const double m = m_tilde_phi(p, n, k);
        const double s = s_tilde_phi(p, n, k);
        CHECK(m >= 0.0);
        CHECK(m <= n);
        CHECK(s >= 0.0);
        CHECK(s <= 0.5 * n * k + 1e-6);
      }
    }
  }
}

TEST_CASE("matches: limits and the brute-force identity") {
  // strong coupling: everything matches
  CHECK(expected_matches(m_tilde_phi({0.0, 10.0}, 4096, 8),
                         s_tilde_phi({0.0, 10.0}, 4096, 8), 4096, 8) /
            (4096.0 * 4) >=
        0.99);
  // independent fair coins: half match
  {
    const double m = m_tilde_phi({0.0, 1e-8}, 4096, 8);
    const double s = s_tilde_phi({0.0, 1e-8}, 4096, 8);
    CHECK(std::fabs(expected_matches(m, s, 4096, 8) / (4096.0 * 4) - 0.5) <=
          0.02);
  }
  // fed brute-force moments, the identity is algebraic
  {
    GraphSpec spec;
    spec.topology = Topology::lattice2d_torus;
    spec.rows = 4;
    spec.cols = 5;
    const auto g = build(spec);
    const auto exact = brute_force(g, 1.0, 0.3);
    const double matches =
        expected_matches(exact.m_active, exact.s_spin, g.n, g.k_nominal);
    CHECK(matches == doctest::Approx(exact.matches).epsilon(1e-12));
  }
}

TEST_CASE("log Z alpha-derivative is the activation estimate") {
  const int n = 4096, k = 8;
  const double h = 1e-4;
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    for (double beta : {0.05, 0.2, 1.0}) {
      const double up = log_z_tilde_phi({alpha + h, beta}, n, k).log_z;
      const double dn = log_z_tilde_phi({alpha - h, beta}, n, k).log_z;
      const double deriv = (up - dn) / (2.0 * h);
      const double m = m_tilde_phi({alpha, beta}, n, k);
      CHECK(std::fabs(deriv - m) / m <= 0.02);
    }
  }
}

TEST_CASE("log Z beta-derivative matches 2S - kM") {
  const int n = 4096, k = 8;
  const double h = 1e-4;
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    for (double beta : {0.05, 0.2, 1.0}) {
      const double up = log_z_tilde_phi({alpha, beta + h}, n, k).log_z;
      const double dn = log_z_tilde_phi({alpha, beta - h}, n, k).log_z;
      const double deriv = (up - dn) / (2.0 * h);
      const double expect = 2.0 * s_tilde_phi({alpha, beta}, n, k) -
                            k * m_tilde_phi({alpha, beta}, n, k);
      CHECK(std::fabs(deriv - expect) / std::fabs(expect) <= 0.05);
    }
  }
}

TEST_CASE("moments dispatcher covers the analytic methods only") {
  const auto est = moments({1.0, 0.1}, 512, 4, MomentMethod::tilde_phi);
  CHECK(est.m_active > 0.0);
  CHECK(est.s_spin > 0.0);
  CHECK_THROWS_AS(moments({1.0, 0.1}, 512, 4, MomentMethod::mcmc),
                  std::invalid_argument);
}
