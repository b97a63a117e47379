#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ising/exact.hpp"
#include "ising/mcmc.hpp"
#include "ising/numeric.hpp"

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

bool within_se(double est, double truth, double se, double k = 3.0) {
  return std::fabs(est - truth) <= k * std::max(se, 1e-12);
}

}  // namespace

TEST_CASE("SW at beta = 0: independent sites with the field odds") {
  const auto g = torus(4, 4);
  MCMCConfig cfg;
  cfg.burn_in = 200;
  cfg.samples = 20000;
  cfg.seed = 11;
  const double alpha = 0.8;
  const auto r = run_chain(g, {alpha, 0.0}, cfg);
  const double expect = 16.0 * logistic(alpha);
  CHECK(within_se(r.mean_active, expect, r.se_active, 4.0));
}

TEST_CASE("SW at alpha = 0: half the lattice active in the long run") {
  const auto g = torus(4, 4);
  MCMCConfig cfg;
  cfg.burn_in = 500;
  cfg.samples = 20000;
  cfg.seed = 5;
  const auto r = run_chain(g, {0.0, 0.4}, cfg);
  CHECK(within_se(r.mean_active, 8.0, r.se_active, 4.0));
}

TEST_CASE("SW chain moments match brute force on the 4x4 torus") {
  const auto g = torus(4, 4);
  const IsingParams p{1.0, 0.4};
  const auto exact = brute_force(g, p.alpha, p.beta);
  MCMCConfig cfg;
  cfg.burn_in = 2000;
  cfg.samples = 100000;
  cfg.seed = 424242;
  const auto r = run_chain(g, p, cfg);
  CHECK(within_se(r.mean_active, exact.m_active, r.se_active));
  CHECK(within_se(r.mean_spin, exact.s_spin, r.se_spin));
  CHECK(within_se(r.mean_matches, exact.matches, r.se_matches));
}

TEST_CASE("Gibbs conditional logits") {
  // isolated vertex: pure field
  const auto lone = Graph::from_adjacency({{}, {}}, 0);
  State x{0, 1};
  CHECK(gibbs_conditional_logit(lone, x, 0, {0.7, 0.5}) ==
        doctest::Approx(0.7));
  // all neighbors active at alpha = 0: logit = beta * degree
  const auto g = torus(4, 4);
  State ones(16, 1);
  CHECK(gibbs_conditional_logit(g, ones, 3, {0.0, 0.3}) ==
        doctest::Approx(0.3 * 4));
  // all neighbors inactive: logit = alpha - beta * degree
  State zeros(16, 0);
  CHECK(gibbs_conditional_logit(g, zeros, 3, {0.2, 0.3}) ==
        doctest::Approx(0.2 - 0.3 * 4));
}

TEST_CASE("Gibbs chain agrees with SW chain on the 4x4 torus") {
  const auto g = torus(4, 4);
  const IsingParams p{0.5, 0.35};
  MCMCConfig cfg;
  cfg.burn_in = 2000;
  cfg.samples = 60000;
  cfg.seed = 9;
  cfg.updater = MCMCConfig::Updater::swendsen_wang;
  const auto sw = run_chain(g, p, cfg);
  cfg.updater = MCMCConfig::Updater::single_site;
  cfg.seed = 10;
  const auto gb = run_chain(g, p, cfg);
  const double se = std::hypot(sw.se_active, gb.se_active);
  CHECK(std::fabs(sw.mean_active - gb.mean_active) <= 3.0 * se);
  const double se_spin = std::hypot(sw.se_spin, gb.se_spin);
  CHECK(std::fabs(sw.mean_spin - gb.mean_spin) <= 3.0 * se_spin);
}

TEST_CASE("detailed balance: empirical law on a 3-path matches enumeration") {
  const auto g = Graph::from_adjacency({{1}, {0, 2}, {1}}, 2);
  const IsingParams p{0.3, 0.7};
  // exact pmf over the 8 states
  double weights[8];
  double z = 0.0;
  for (int s = 0; s < 8; ++s) {
    State x{static_cast<std::uint8_t>(s & 1),
            static_cast<std::uint8_t>((s >> 1) & 1),
            static_cast<std::uint8_t>((s >> 2) & 1)};
    const auto ms = match_statistics(g, x);
    weights[s] = std::exp(p.alpha * ms.active - p.beta * ms.nonmatches);
    z += weights[s];
  }
  for (auto updater : {MCMCConfig::Updater::swendsen_wang,
                       MCMCConfig::Updater::single_site}) {
    RngStream rng(2024, updater == MCMCConfig::Updater::swendsen_wang ? 0 : 1);
    State x(3, 0);
    std::vector<long> counts(8, 0);
    const long sweeps = 1000000;
    for (long t = 0; t < sweeps; ++t) {
      if (updater == MCMCConfig::Updater::swendsen_wang) {
        sw_step(g, x, p, rng);
      } else {
        gibbs_sweep(g, x, p, rng);
      }
      counts[x[0] | (x[1] << 1) | (x[2] << 2)]++;
    }
    double tv = 0.0;
    for (int s = 0; s < 8; ++s)
      tv += std::fabs(counts[s] / static_cast<double>(sweeps) - weights[s] / z);
    tv *= 0.5;
    CHECK(tv <= 0.005);
  }
}

TEST_CASE("SW keeps states binary and clusters consistent") {
  const auto g = torus(4, 5);
  State x(g.n, 0);
  RngStream rng(77);
  const IsingParams p{0.2, 0.8};
  for (int t = 0; t < 200; ++t) {
    sw_step(g, x, p, rng);
    for (auto v : x) CHECK((v == 0 || v == 1));
  }
}

TEST_CASE("mean matches increase with beta at alpha = 0") {
  const auto g = torus(4, 4);
  MCMCConfig cfg;
  cfg.burn_in = 1000;
  cfg.samples = 30000;
  cfg.seed = 31;
  double prev = -1e9;
  double prev_se = 0.0;
  for (double beta : {0.1, 0.3, 0.6, 1.0}) {
    const auto r = run_chain(g, {0.0, beta}, cfg);
    CHECK(r.mean_matches >= prev - 3.0 * std::hypot(prev_se, r.se_matches));
    prev = r.mean_matches;
    prev_se = r.se_matches;
  }
}

TEST_CASE("chains are bit-reproducible by seed and keyed by stream") {
  const auto g = torus(4, 4);
  const IsingParams p{0.5, 0.3};
  MCMCConfig cfg;
  cfg.burn_in = 100;
  cfg.samples = 500;
  cfg.seed = 123;
  const auto a = run_chain(g, p, cfg);
  const auto b = run_chain(g, p, cfg);
  CHECK(a.mean_active == b.mean_active);
  CHECK(a.mean_spin == b.mean_spin);
  CHECK(a.se_active == b.se_active);
  cfg.seed = 124;
  const auto c = run_chain(g, p, cfg);
  CHECK(a.mean_active != c.mean_active);
}

TEST_CASE("path sampling: tiny beta reduces to the independent-sites constant") {
  const auto g = torus(4, 4);
  MCMCConfig cfg;
  cfg.burn_in = 200;
  cfg.samples = 500;
  cfg.seed = 1;
  const double beta = 1e-4;
  const double est = path_sample_log_z(g, 1.0, beta, 2, cfg).log_z;
  const double closed = 16.0 * log1p_exp(1.0);
  CHECK(std::fabs(est - closed) <= 2.0 * beta * g.m);
}

TEST_CASE("path sampling matches brute force within 1% on the 4x5 torus") {
  const auto g = torus(4, 5);
  const auto exact = brute_force(g, 1.0, 0.5);
  MCMCConfig cfg;
  cfg.burn_in = 5000;
  cfg.samples = 5000;
  cfg.seed = 7;
  const auto est = path_sample_log_z(g, 1.0, 0.5, 20, cfg);
  CHECK(std::fabs(est.log_z - exact.log_z) / exact.log_z <= 0.01);
}

TEST_CASE("path sampling: cold start agrees with warm start within noise") {
  const auto g = torus(4, 5);
  MCMCConfig cfg;
  cfg.burn_in = 3000;
  cfg.samples = 3000;
  cfg.seed = 3;
  const auto warm = path_sample_log_z(g, 0.8, 0.6, 12, cfg, true);
  const auto cold = path_sample_log_z(g, 0.8, 0.6, 12, cfg, false);
  CHECK(std::fabs(warm.log_z - cold.log_z) / warm.log_z <= 0.01);
}

TEST_CASE("config validation") {
  MCMCConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  const auto g = torus(4, 4);
  MCMCConfig ok;
  CHECK_THROWS_AS(path_sample_log_z(g, 1.0, 0.0, 8, ok),
                  std::invalid_argument);
  CHECK_THROWS_AS(path_sample_log_z(g, 1.0, 0.5, 1, ok),
                  std::invalid_argument);
}
