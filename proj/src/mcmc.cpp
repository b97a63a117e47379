#include "ising/mcmc.hpp"

#include <cmath>
#include <stdexcept>

#include "ising/detail/union_find.hpp"
#include "ising/numeric.hpp"

namespace ising {

void MCMCConfig::validate() const {
  if (burn_in < 0) throw std::invalid_argument("burn_in >= 0");
  if (samples < 1) throw std::invalid_argument("samples >= 1");
  if (thin < 1) throw std::invalid_argument("thin >= 1");
}

namespace {

struct SwWorkspace {
  detail::UnionFind uf{1};
  std::vector<signed char> root_label;
};

void sw_step_ws(const Graph& g, State& x, const IsingParams& p, RngStream& rng,
                SwWorkspace& ws) {
  ws.uf.reset(g.n);
  const double p_bond = -std::expm1(-p.beta);
  if (p_bond > 0.0) {
    for (const auto& [i, j] : g.edges) {
      if (x[i] == x[j] && rng.next_double() < p_bond) ws.uf.unite(i, j);
    }
  }
  ws.root_label.assign(g.n, -1);
  for (int i = 0; i < g.n; ++i) {
    const int r = ws.uf.find(i);
    if (ws.root_label[r] < 0) {
      const double logit = p.alpha * ws.uf.component_size(r);
      ws.root_label[r] = rng.next_bernoulli_logit(logit) ? 1 : 0;
    }
    x[i] = static_cast<std::uint8_t>(ws.root_label[r]);
  }
}

}  // namespace

void sw_step(const Graph& g, State& x, const IsingParams& p, RngStream& rng) {
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("state length does not match graph order");
  p.validate();
  thread_local SwWorkspace ws;
  sw_step_ws(g, x, p, rng, ws);
}

double gibbs_conditional_logit(const Graph& g, const State& x, int i,
                               const IsingParams& p) {
  std::int64_t n1 = 0;
  for (int j : g.neighbors(i)) n1 += x[j];
  return p.alpha - p.beta * g.degrees[i] + 2.0 * p.beta * n1;
}

void gibbs_sweep(const Graph& g, State& x, const IsingParams& p,
                 RngStream& rng) {
  if (static_cast<int>(x.size()) != g.n)
    throw std::invalid_argument("state length does not match graph order");
  p.validate();
  for (int i = 0; i < g.n; ++i) {
    x[i] = rng.next_bernoulli_logit(gibbs_conditional_logit(g, x, i, p)) ? 1 : 0;
  }
}

namespace {

// Batch-means standard error with ceil(sqrt(S)) batches.
double batch_means_se(const std::vector<double>& v) {
  const long s = static_cast<long>(v.size());
  if (s < 4) return 0.0;
  const long b = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(s))));
  const long len = s / b;
  if (len < 1 || b < 2) return 0.0;
  const long used = b * len;
  double grand = 0.0;
  for (long i = 0; i < used; ++i) grand += v[i];
  grand /= used;
  double ss = 0.0;
  for (long j = 0; j < b; ++j) {
    double mean = 0.0;
    for (long i = j * len; i < (j + 1) * len; ++i) mean += v[i];
    mean /= len;
    ss += (mean - grand) * (mean - grand);
  }
  return std::sqrt(ss / (static_cast<double>(b) * (b - 1)));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

}  // namespace

ChainResult run_chain_from(const Graph& g, const IsingParams& p,
                           const MCMCConfig& cfg, State& x, RngStream& rng) {
  cfg.validate();
  p.validate();
  SwWorkspace ws;
  auto sweep = [&]() {
    if (cfg.updater == MCMCConfig::Updater::swendsen_wang) {
      sw_step_ws(g, x, p, rng, ws);
    } else {
      gibbs_sweep(g, x, p, rng);
    }
  };
  for (long t = 0; t < cfg.burn_in; ++t) sweep();

  std::vector<double> active, spin, matches;
  active.reserve(cfg.samples);
  spin.reserve(cfg.samples);
  matches.reserve(cfg.samples);
  for (long t = 0; t < cfg.samples; ++t) {
    for (int u = 0; u < cfg.thin; ++u) sweep();
    const auto st = match_statistics(g, x);
    active.push_back(static_cast<double>(st.active));
    spin.push_back(static_cast<double>(st.spin));
    matches.push_back(static_cast<double>(st.matches));
  }

  ChainResult r;
  r.mean_active = mean_of(active);
  r.mean_spin = mean_of(spin);
  r.mean_matches = mean_of(matches);
  r.se_active = batch_means_se(active);
  r.se_spin = batch_means_se(spin);
  r.se_matches = batch_means_se(matches);
  r.n_samples = cfg.samples;
  r.seed = cfg.seed;
  return r;
}

ChainResult run_chain(const Graph& g, const IsingParams& p,
                      const MCMCConfig& cfg, std::uint64_t chain_id) {
  RngStream rng(cfg.seed, chain_id);
  State x(g.n);
  for (int i = 0; i < g.n; ++i)
    x[i] = rng.next_bernoulli_logit(p.alpha) ? 1 : 0;
  return run_chain_from(g, p, cfg, x, rng);
}

PathSampleResult path_sample_detail(const Graph& g, double alpha, double beta,
                                    int knots, const MCMCConfig& cfg,
                                    bool warm_start) {
  if (knots < 2) throw std::invalid_argument("path sampling needs >= 2 knots");
  if (!(beta > 0.0)) throw std::invalid_argument("path sampling needs beta > 0");
  cfg.validate();

  const double h = beta / (knots - 1);
  std::vector<double> mean_matches(knots);
  // b = 0: independent sites, P(edge matches) = p^2 + (1-p)^2.
  const double p1 = logistic(alpha);
  mean_matches[0] = g.m * (p1 * p1 + (1.0 - p1) * (1.0 - p1));

  ChainResult last;
  State x(g.n);
  bool have_state = false;
  for (int knot = 1; knot < knots; ++knot) {
    const IsingParams p{alpha, h * knot};
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(knot));
    if (!warm_start || !have_state) {
      for (int i = 0; i < g.n; ++i)
        x[i] = rng.next_bernoulli_logit(alpha) ? 1 : 0;
      have_state = true;
    }
    last = run_chain_from(g, p, cfg, x, rng);
    mean_matches[knot] = last.mean_matches;
  }

  double integral = 0.0;
  for (int knot = 0; knot + 1 < knots; ++knot)
    integral += 0.5 * h * (mean_matches[knot] + mean_matches[knot + 1]);

  PathSampleResult out;
  out.log_z.log_z = integral + g.n * log1p_exp(alpha) -
                    static_cast<double>(g.m) * beta;
  out.log_z.method = ZMethod::path_sampling;
  out.log_z.quad_points = knots;
  out.final_knot = last;
  return out;
}

LogZEstimate path_sample_log_z(const Graph& g, double alpha, double beta,
                               int knots, const MCMCConfig& cfg,
                               bool warm_start) {
  return path_sample_detail(g, alpha, beta, knots, cfg, warm_start).log_z;
}

}  // namespace ising
