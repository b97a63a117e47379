#include "ising/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "ising/detail/union_find.hpp"
#include "ising/numeric.hpp"

#include "json.hpp"

namespace ising {

int PValueData::n_masked() const {
  int c = 0;
  for (auto m : mask) c += m;
  return c;
}

void PValueData::validate() const {
  if (rows <= 0 || cols <= 0 || R <= 0)
    throw std::invalid_argument("p-value data needs rows, cols, R > 0");
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  if (log_p_bar.size() != n || log_q_bar.size() != n || mask.size() != n)
    throw std::invalid_argument("p-value data: inconsistent sizes");
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    if (!std::isfinite(log_p_bar[i]) || !std::isfinite(log_q_bar[i]))
      throw std::invalid_argument("p-value data: non-finite log mean at voxel " +
                                  std::to_string(i));
  }
}

namespace {

double clamp_p(double p) {
  return std::min(1.0 - PValueData::kClamp, std::max(PValueData::kClamp, p));
}

}  // namespace

PValueData PValueData::from_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("p-value csv: empty input");
  struct Row {
    int voxel, r, c, rep;
    double p;
  };
  std::vector<Row> parsed;
  int rows = 0, cols = 0, max_rep = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string f[5];
    for (int c = 0; c < 5; ++c)
      if (!std::getline(ss, f[c], ','))
        throw std::invalid_argument("p-value csv: malformed row: " + line);
    Row row{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3]),
            std::stod(f[4])};
    rows = std::max(rows, row.r + 1);
    cols = std::max(cols, row.c + 1);
    max_rep = std::max(max_rep, row.rep + 1);
    parsed.push_back(row);
  }
  PValueData d;
  d.rows = rows;
  d.cols = cols;
  d.R = max_rep;
  const int n = rows * cols;
  struct Cell {
    double sum_log_p = 0, sum_log_q = 0;
    int count = 0;
  };
  std::vector<Cell> acc(n);
  for (const Row& row : parsed) {
    const int idx = row.r * cols + row.c;
    if (row.voxel != idx)
      throw std::invalid_argument(
          "p-value csv: voxel id inconsistent with row-major (row,col)");
    const double pc = clamp_p(row.p);
    acc[idx].sum_log_p += std::log(pc);
    acc[idx].sum_log_q += std::log1p(-pc);
    acc[idx].count += 1;
  }
  d.log_p_bar.assign(n, 0.0);
  d.log_q_bar.assign(n, 0.0);
  d.mask.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (acc[i].count == 0) continue;  // absent voxels stay masked out
    if (acc[i].count != d.R)
      throw std::invalid_argument("p-value csv: voxel " + std::to_string(i) +
                                  " has " + std::to_string(acc[i].count) +
                                  " reps, expected " + std::to_string(d.R));
    d.log_p_bar[i] = acc[i].sum_log_p / d.R;
    d.log_q_bar[i] = acc[i].sum_log_q / d.R;
    d.mask[i] = 1;
  }
  d.validate();
  return d;
}

PValueData PValueData::from_binary(const std::string& path) {
  std::ifstream meta(path + ".json");
  if (!meta) throw std::invalid_argument("cannot open sidecar " + path + ".json");
  nlohmann::json j;
  meta >> j;
  PValueData d;
  d.rows = j.at("rows").get<int>();
  d.cols = j.at("cols").get<int>();
  d.R = j.at("R").get<int>();
  const long n = static_cast<long>(d.rows) * d.cols;
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw std::invalid_argument("cannot open " + path);
  std::vector<double> buf(static_cast<std::size_t>(n) * d.R);
  bin.read(reinterpret_cast<char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(double)))
    throw std::invalid_argument("binary p-value file too short");
  d.log_p_bar.assign(n, 0.0);
  d.log_q_bar.assign(n, 0.0);
  d.mask.assign(n, 1);
  for (int rep = 0; rep < d.R; ++rep) {
    for (long i = 0; i < n; ++i) {
      const double p = clamp_p(buf[static_cast<std::size_t>(rep) * n + i]);
      d.log_p_bar[i] += std::log(p) / d.R;
      d.log_q_bar[i] += std::log1p(-p) / d.R;
    }
  }
  if (j.contains("mask_path") && !j.at("mask_path").is_null()) {
    std::ifstream mf(j.at("mask_path").get<std::string>());
    if (!mf) throw std::invalid_argument("cannot open mask file");
    d.apply_mask_csv(mf);
  }
  d.validate();
  return d;
}

void PValueData::apply_mask_csv(std::istream& is) {
  std::string line;
  int r = 0;
  while (std::getline(is, line) && r < rows) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    int c = 0;
    while (std::getline(ss, tok, ',') && c < cols) {
      mask[r * cols + c] = (std::stoi(tok) != 0 && mask[r * cols + c]) ? 1 : 0;
      ++c;
    }
    if (c != cols) throw std::invalid_argument("mask csv: wrong column count");
    ++r;
  }
  if (r != rows) throw std::invalid_argument("mask csv: wrong row count");
}

void BayesParams::validate() const {
  if (!(psi > 0.0)) throw std::invalid_argument("psi must be > 0");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu in (0,1)");
  if (beta < 0.0) throw std::domain_error("beta must be >= 0");
}

void PriorConfig::validate() const {
  if (!(zeta > 0 && theta_psi > 0 && gamma_beta > 0 && sigma2_alpha > 0))
    throw std::invalid_argument("prior hyperparameters must be positive");
}

LogZProvider make_tilde_provider(int n, int k, const QuadConfig& quad) {
  return [n, k, quad](double alpha, double beta) {
    return log_z(IsingParams{alpha, beta}, n, k, ZMethod::tilde_phi, quad).log_z;
  };
}

double entropy_term(double mu) {
  return mu * std::log(mu) + (1.0 - mu) * std::log1p(-mu);
}

namespace {

double log_c_beta(double psi, double mu) {
  return log_gamma(psi) - log_gamma(mu * psi) - log_gamma((1.0 - mu) * psi);
}

struct FieldCoeffs {
  double base;  // alpha + R log C_B
  double c_p;   // (mu psi - 1)
  double c_q;   // ((1-mu) psi - 1)
};

FieldCoeffs field_coeffs(const PValueData& d, const BayesParams& s) {
  FieldCoeffs f;
  f.base = s.alpha + d.R * log_c_beta(s.psi, s.mu);
  f.c_p = s.mu * s.psi - 1.0;
  f.c_q = (1.0 - s.mu) * s.psi - 1.0;
  return f;
}

double field_at(const PValueData& d, const FieldCoeffs& f, int i) {
  return f.base + f.c_p * d.R * d.log_p_bar[i] + f.c_q * d.R * d.log_q_bar[i];
}

}  // namespace

double voxel_field(const PValueData& d, const BayesParams& s, int i) {
  const auto f = field_coeffs(d, s);
  const double a = field_at(d, f, i);
  if (!std::isfinite(a))
    throw std::invalid_argument("non-finite field A_i at voxel " +
                                std::to_string(i));
  return a;
}

void update_x(const PValueData& d, BayesParams& s, const Graph& g,
              RngStream& rng, LabelUpdater mode) {
  if (g.n != d.n_voxels())
    throw std::invalid_argument("graph order does not match voxel count");
  if (static_cast<int>(s.x.size()) != g.n)
    throw std::invalid_argument("state length does not match graph order");
  const auto f = field_coeffs(d, s);

  if (mode == LabelUpdater::single_site) {
    for (int i = 0; i < g.n; ++i) {
      if (!d.mask[i]) continue;
      std::int64_t n1 = 0;
      for (int j : g.neighbors(i)) n1 += s.x[j];
      const double a_i = field_at(d, f, i);
      if (!std::isfinite(a_i))
        throw std::invalid_argument("non-finite field A_i at voxel " +
                                    std::to_string(i));
      const double logit = a_i - s.beta * g.degrees[i] + 2.0 * s.beta * n1;
      s.x[i] = rng.next_bernoulli_logit(logit) ? 1 : 0;
    }
    return;
  }

  // Swendsen-Wang over masked-in voxels. Frozen voxels stay 0 and act as a
  // fixed boundary: a cluster C flips to 1 with logit
  //   sum_{i in C} A_i - beta * #(edges from C to frozen voxels).
  detail::UnionFind uf(g.n);
  const double p_bond = -std::expm1(-s.beta);
  for (const auto& [i, j] : g.edges) {
    if (!d.mask[i] || !d.mask[j]) continue;
    if (s.x[i] == s.x[j] && rng.next_double() < p_bond) uf.unite(i, j);
  }
  std::vector<double> cluster_logit(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    if (!d.mask[i]) continue;
    const double a_i = field_at(d, f, i);
    if (!std::isfinite(a_i))
      throw std::invalid_argument("non-finite field A_i at voxel " +
                                  std::to_string(i));
    cluster_logit[uf.find(i)] += a_i;
  }
  for (const auto& [i, j] : g.edges) {
    if (d.mask[i] && !d.mask[j]) cluster_logit[uf.find(i)] -= s.beta;
    if (!d.mask[i] && d.mask[j]) cluster_logit[uf.find(j)] -= s.beta;
  }
  std::vector<signed char> label(g.n, -1);
  for (int i = 0; i < g.n; ++i) {
    if (!d.mask[i]) continue;
    const int r = uf.find(i);
    if (label[r] < 0)
      label[r] = rng.next_bernoulli_logit(cluster_logit[r]) ? 1 : 0;
    s.x[i] = static_cast<std::uint8_t>(label[r]);
  }
}

double beta_log_accept_simplified(double beta, double beta_prop, double gamma,
                                  double log_z_cur, double log_z_prop,
                                  double nonmatches) {
  return log_z_cur - log_z_prop + std::log(beta_prop / beta) +
         ((beta * beta + beta_prop * beta_prop) / gamma) *
             std::log(beta / beta_prop) +
         (beta_prop * beta_prop - beta * beta) / gamma -
         (beta_prop - beta) * nonmatches;
}

double beta_log_accept_full(double beta, double beta_prop, double gamma,
                            double log_z_cur, double log_z_prop,
                            double nonmatches) {
  return log_z_cur - log_z_prop + log_gamma(beta * beta / gamma) -
         log_gamma(beta_prop * beta_prop / gamma) +
         ((beta_prop * beta_prop - beta * beta) / gamma) *
             std::log(beta * beta_prop / gamma) -
         (beta_prop - beta) * nonmatches;
}

double beta_log_accept_hastings(double beta, double beta_prop, double gamma,
                                double log_z_cur, double log_z_prop,
                                double nonmatches) {
  return beta_log_accept_full(beta, beta_prop, gamma, log_z_cur, log_z_prop,
                              nonmatches) +
         std::log(beta_prop / beta);
}

bool update_beta(BayesParams& s, const Graph& g, RngStream& rng,
                 const PriorConfig& prior, const LogZProvider& zprov,
                 double& log_z_cache, UpdateDiagnostics* diag) {
  const double gamma = prior.gamma_beta;
  const double shape = s.beta * s.beta / gamma;
  const double rate = s.beta / gamma;
  const double prop = rng.next_gamma(shape, rate);
  const double nm =
      static_cast<double>(match_statistics(g, s.x).nonmatches);
  if (diag) ++diag->beta_proposed;
  if (!(prop > 0.0)) return false;  // underflowed draw: certain rejection
  const double log_z_prop = zprov(s.alpha, prop);
  double log_r = beta_log_accept_hastings(s.beta, prop, gamma, log_z_cache,
                                          log_z_prop, nm);
  if (log_r > 0.0) log_r = 0.0;
  if (std::log(rng.next_open()) < log_r) {
    s.beta = prop;
    log_z_cache = log_z_prop;
    if (diag) ++diag->beta_accepted;
    return true;
  }
  return false;
}

bool update_alpha(BayesParams& s, const Graph& g, RngStream& rng,
                  const PriorConfig& prior, const LogZProvider& zprov,
                  double& log_z_cache, UpdateDiagnostics* diag) {
  const double prop = s.alpha + std::sqrt(prior.sigma2_alpha) * rng.next_normal();
  std::int64_t active = 0;
  for (auto v : s.x) active += v;
  const double log_z_prop = zprov(prop, s.beta);
  double log_r = log_z_cache - log_z_prop + (prop - s.alpha) * active;
  if (log_r > 0.0) log_r = 0.0;
  if (diag) ++diag->alpha_proposed;
  if (std::log(rng.next_open()) < log_r) {
    s.alpha = prop;
    log_z_cache = log_z_prop;
    if (diag) ++diag->alpha_accepted;
    return true;
  }
  return false;
}

double psi_log_accept(double psi, double psi_prop, double n1, double mu) {
  return (psi - psi_prop) * n1 * entropy_term(mu);
}

bool update_psi(BayesParams& s, const PValueData& d, RngStream& rng,
                const PriorConfig& prior, UpdateDiagnostics* diag) {
  double n_active = 0.0, log_a = 0.0, log_b = 0.0;
  const int n = d.n_voxels();
  for (int i = 0; i < n; ++i) {
    if (!s.x[i]) continue;
    n_active += 1.0;
    log_a += d.R * d.log_p_bar[i];
    log_b += d.R * d.log_q_bar[i];
  }
  const double n1 = d.R * n_active;
  double rate =
      prior.theta_psi + entropy_term(s.mu) - s.mu * log_a - (1.0 - s.mu) * log_b;
  double shape = 0.5 * n1 + prior.zeta;
  if (!(rate > 0.0)) {
    // Degenerate (typically all-inactive) state: fall back to a prior draw.
    if (diag) ++diag->psi_rate_fallbacks;
    rate = prior.theta_psi;
    shape = prior.zeta;
  }
  const double prop = rng.next_gamma(shape, rate);
  double log_r = psi_log_accept(s.psi, prop, n1, s.mu);
  if (log_r > 0.0) log_r = 0.0;
  if (diag) ++diag->psi_proposed;
  if (std::log(rng.next_open()) < log_r) {
    s.psi = prop;
    if (diag) ++diag->psi_accepted;
    return true;
  }
  return false;
}

double mu_log_accept_stirling(double mu, double mu_prop, double psi, double n1,
                              double log_a, double log_b) {
  return psi * (mu_prop - mu) * (log_a - log_b) +
         psi * n1 * (entropy_term(mu) - entropy_term(mu_prop)) +
         0.5 * n1 *
             std::log(mu_prop * (1.0 - mu_prop) / (mu * (1.0 - mu)));
}

double mu_log_accept_exact(double mu, double mu_prop, double psi, double n1,
                           double log_a, double log_b) {
  return n1 * (log_c_beta(psi, mu_prop) - log_c_beta(psi, mu)) +
         psi * (mu_prop - mu) * (log_a - log_b);
}

bool update_mu(BayesParams& s, const PValueData& d, RngStream& rng,
               bool exact_ratio, UpdateDiagnostics* diag) {
  double n_active = 0.0, log_a = 0.0, log_b = 0.0;
  const int n = d.n_voxels();
  for (int i = 0; i < n; ++i) {
    if (!s.x[i]) continue;
    n_active += 1.0;
    log_a += d.R * d.log_p_bar[i];
    log_b += d.R * d.log_q_bar[i];
  }
  const double n1 = d.R * n_active;
  const double prop = rng.next_open();
  double log_r = exact_ratio
                     ? mu_log_accept_exact(s.mu, prop, s.psi, n1, log_a, log_b)
                     : mu_log_accept_stirling(s.mu, prop, s.psi, n1, log_a,
                                              log_b);
  if (log_r > 0.0) log_r = 0.0;
  if (diag) ++diag->mu_proposed;
  if (std::log(rng.next_open()) < log_r) {
    s.mu = prop;
    if (diag) ++diag->mu_accepted;
    return true;
  }
  return false;
}

double trace_mean(const std::vector<double>& trace) {
  double s = 0.0;
  for (double v : trace) s += v;
  return trace.empty() ? 0.0 : s / trace.size();
}

double trace_quantile(std::vector<double> trace, double q) {
  if (trace.empty()) return 0.0;
  std::sort(trace.begin(), trace.end());
  const double pos = q * (trace.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, trace.size() - 1);
  const double frac = pos - lo;
  return trace[lo] * (1.0 - frac) + trace[hi] * frac;
}

PosteriorSummary run_posterior(const PValueData& d, const Graph& g,
                               const PriorConfig& prior,
                               const PosteriorConfig& cfg,
                               const BayesParams& init,
                               const LogZProvider& zprov) {
  d.validate();
  prior.validate();
  cfg.mcmc.validate();
  if (g.n != d.n_voxels())
    throw std::invalid_argument("graph order does not match voxel count");

  BayesParams s = init;
  s.validate();
  if (s.x.empty()) s.x.assign(g.n, 0);
  for (int i = 0; i < g.n; ++i)
    if (!d.mask[i]) s.x[i] = 0;  // frozen

  RngStream rng(cfg.mcmc.seed, /*stream=*/0xBA1E5);

  PosteriorSummary out;
  out.rows = d.rows;
  out.cols = d.cols;
  out.seed = cfg.mcmc.seed;
  out.activation_prob.assign(g.n, 0.0);

  for (long t = 0; t < cfg.label_warmup; ++t)
    update_x(d, s, g, rng, cfg.labels);

  double log_z_cache = zprov(s.alpha, s.beta);
  const long total = cfg.mcmc.burn_in + cfg.mcmc.samples * cfg.mcmc.thin;
  long kept = 0;
  for (long t = 0; t < total; ++t) {
    update_x(d, s, g, rng, cfg.labels);
    update_beta(s, g, rng, prior, zprov, log_z_cache, &out.diag);
    update_alpha(s, g, rng, prior, zprov, log_z_cache, &out.diag);
    update_psi(s, d, rng, prior, &out.diag);
    update_mu(s, d, rng, cfg.mu_exact_ratio, &out.diag);
    const long post = t - cfg.mcmc.burn_in;
    if (post >= 0 && (post + 1) % cfg.mcmc.thin == 0) {
      ++kept;
      for (int i = 0; i < g.n; ++i) out.activation_prob[i] += s.x[i];
      out.alpha_trace.push_back(s.alpha);
      out.beta_trace.push_back(s.beta);
      out.psi_trace.push_back(s.psi);
      out.mu_trace.push_back(s.mu);
    }
  }
  for (double& v : out.activation_prob) v /= std::max(1L, kept);
  out.n_samples = kept;
  return out;
}

}  // namespace ising
