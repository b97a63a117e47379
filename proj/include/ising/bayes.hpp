#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ising/graph.hpp"
#include "ising/mcmc.hpp"
#include "ising/partition.hpp"
#include "ising/rng.hpp"

namespace ising {

// Replicate p-value maps reduced to per-voxel mean log p and mean log(1-p):
// only those enter the likelihood, via R*log_p_bar = sum_r log p_ri.
struct PValueData {
  int rows = 0, cols = 0, R = 0;
  std::vector<double> log_p_bar;
  std::vector<double> log_q_bar;
  std::vector<std::uint8_t> mask;

  int n_voxels() const { return rows * cols; }
  int n_masked() const;
  void validate() const;

  // CSV with header voxel,row,col,rep,p (any row order, all reps per voxel).
  static PValueData from_csv(std::istream& is);
  // Raw row-major doubles [rep][row][col] described by <path>.json sidecar
  // {rows, cols, R, mask_path?}.
  static PValueData from_binary(const std::string& path);
  // rows lines of comma-separated 0/1 flags.
  void apply_mask_csv(std::istream& is);

  // p-values clamped to [eps, 1-eps] on ingestion so log p stays finite.
  static constexpr double kClamp = 1e-12;
};

struct BayesParams {
  double alpha = 0.001;
  double beta = 0.0025;
  double psi = 1.0;
  double mu = 0.001;
  State x;

  void validate() const;
};

struct PriorConfig {
  double zeta = 10.0;        // Gamma shape for psi
  double theta_psi = 1.0;    // Gamma rate for psi (renamed from the model's
                             // theta to avoid the edge-density collision)
  double gamma_beta = 1.0;   // beta-proposal variance
  double sigma2_alpha = 1.0; // alpha-proposal variance
  void validate() const;
};

enum class LabelUpdater { single_site, swendsen_wang };

// Pluggable partition-function source for the alpha/beta Metropolis ratios;
// tests swap in brute-force Z to isolate sampler logic from approximation
// error.
using LogZProvider = std::function<double(double alpha, double beta)>;

LogZProvider make_tilde_provider(int n, int k, const QuadConfig& quad = {});

struct UpdateDiagnostics {
  long alpha_proposed = 0, alpha_accepted = 0;
  long beta_proposed = 0, beta_accepted = 0;
  long psi_proposed = 0, psi_accepted = 0;
  long mu_proposed = 0, mu_accepted = 0;
  long psi_rate_fallbacks = 0;
};

// Per-voxel field entering the label updates:
//   A_i = alpha + (mu psi - 1) R log p_i + ((1-mu) psi - 1) R log q_i
//       + R log C_B,  log C_B = lG(psi) - lG(mu psi) - lG((1-mu) psi).
double voxel_field(const PValueData& d, const BayesParams& s, int i);

// Label update: raster Gibbs with P(X_i = 1) = logistic(A_i - beta deg_i +
// 2 beta n1_i), or Swendsen-Wang with clusters over masked-in equal-label
// pairs and cluster flip logit sum_C A_i - beta * (edges to frozen voxels).
void update_x(const PValueData& d, BayesParams& s, const Graph& g,
              RngStream& rng, LabelUpdater mode);

// Metropolis-Hastings updates for the hyperparameters. Each returns whether
// the proposal was accepted; `log_z_cache` always holds log Z at the current
// (alpha, beta) on exit.
bool update_beta(BayesParams& s, const Graph& g, RngStream& rng,
                 const PriorConfig& prior, const LogZProvider& zprov,
                 double& log_z_cache, UpdateDiagnostics* diag = nullptr);
bool update_alpha(BayesParams& s, const Graph& g, RngStream& rng,
                  const PriorConfig& prior, const LogZProvider& zprov,
                  double& log_z_cache, UpdateDiagnostics* diag = nullptr);
bool update_psi(BayesParams& s, const PValueData& d, RngStream& rng,
                const PriorConfig& prior, UpdateDiagnostics* diag = nullptr);
bool update_mu(BayesParams& s, const PValueData& d, RngStream& rng,
               bool exact_ratio = false, UpdateDiagnostics* diag = nullptr);

// Acceptance log-ratios exposed for the oracle tests. The Gamma proposal
// with mean beta and variance gamma has density ratio
//   q(beta | prop) / q(prop | beta)
//     = (Gam(b^2/g)/Gam(p^2/g)) (bp/g)^{(p^2-b^2)/g} (p/b),
// so the correct Metropolis-Hastings log-ratio is `hastings`. `full` is the
// same expression without the trailing (p/b) term, and `simplified` is its
// Stirling reduction; both leak mass toward beta -> 0 where proposals become
// degenerate (checked against an exact posterior in the tests), so the
// sampler uses `hastings`.
double beta_log_accept_simplified(double beta, double beta_prop, double gamma,
                                  double log_z_cur, double log_z_prop,
                                  double nonmatches);
double beta_log_accept_full(double beta, double beta_prop, double gamma,
                            double log_z_cur, double log_z_prop,
                            double nonmatches);
double beta_log_accept_hastings(double beta, double beta_prop, double gamma,
                                double log_z_cur, double log_z_prop,
                                double nonmatches);
double psi_log_accept(double psi, double psi_prop, double n1, double mu);
double mu_log_accept_stirling(double mu, double mu_prop, double psi, double n1,
                              double log_a, double log_b);
double mu_log_accept_exact(double mu, double mu_prop, double psi, double n1,
                           double log_a, double log_b);
double entropy_term(double mu);  // mu log mu + (1-mu) log(1-mu)

struct PosteriorConfig {
  MCMCConfig mcmc;               // burn_in / samples / thin / seed
  long label_warmup = 3000;      // label-only sweeps before joint updates
  LabelUpdater labels = LabelUpdater::single_site;
  bool mu_exact_ratio = false;
  QuadConfig quad;
};

struct PosteriorSummary {
  int rows = 0, cols = 0;
  std::vector<double> activation_prob;  // posterior mean of x per voxel
  std::vector<double> alpha_trace, beta_trace, psi_trace, mu_trace;
  UpdateDiagnostics diag;
  std::uint64_t seed = 0;
  long n_samples = 0;
};

double trace_mean(const std::vector<double>& trace);
double trace_quantile(std::vector<double> trace, double q);

PosteriorSummary run_posterior(const PValueData& d, const Graph& g,
                               const PriorConfig& prior,
                               const PosteriorConfig& cfg,
                               const BayesParams& init,
                               const LogZProvider& zprov);

}  // namespace ising
