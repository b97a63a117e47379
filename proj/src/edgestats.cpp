#include "ising/edgestats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ising/numeric.hpp"

namespace ising {

SubgraphEdgeStats subgraph_stats(double n, double k, double ell, double beta) {
  if (!(n >= 3.0)) throw std::invalid_argument("subgraph_stats: n >= 3");
  if (!(k >= 1.0 && k <= n - 1.0))
    throw std::invalid_argument("subgraph_stats: need 1 <= k <= n-1");
  if (!(ell >= 2.0 && ell <= n - 1.0))
    throw std::invalid_argument("subgraph_stats: need 2 <= ell <= n-1");
  if (beta < 0.0) throw std::domain_error("subgraph_stats: beta >= 0");

  SubgraphEdgeStats s;
  s.n = n;
  s.k = k;
  s.ell = ell;
  s.beta = beta;
  s.ell2 = ell * (ell - 1.0) / 2.0;
  s.theta = k / (n - 1.0);
  s.y_n1 = (ell - 1.0) / (n - 1.0);
  s.y_n2 = (ell - 2.0) / (n - 2.0);
  s.mu_ell = 2.0 * s.ell2 * s.theta;
  s.sigma2_ell = 2.0 * s.ell2 * s.theta * (1.0 - s.theta) * (1.0 - s.y_n2);
  s.rho_ell = (ell - 1.0) * (n - 2.0 * k) / ((n - 2.0) * (n - k - 1.0));
  s.nu_ell = s.theta *
             (1.0 + beta * (1.0 - s.theta) * (1.0 - s.y_n2) * (1.0 - s.rho_ell));
  s.s_lo = std::max(0.0, k - n + ell) * ell / 2.0;
  s.s_hi = std::min(ell - 1.0, k) * ell / 2.0;
  s.mu_ell1 = (ell - 1.0) * s.theta;
  s.sigma2_ell1 = (ell - 1.0) * (1.0 - s.y_n1) * s.theta * (1.0 - s.theta);
  return s;
}

SubgraphEdgeStats subgraph_stats(int n, int k, int ell, double beta) {
  return subgraph_stats(static_cast<double>(n), static_cast<double>(k),
                        static_cast<double>(ell), beta);
}

double pdm_logpmf(int r, int ell, int n, int k) {
  if (ell < 2 || ell > n || k < 1 || k > n - 1)
    throw std::invalid_argument("pdm_logpmf: invalid (n, k, ell)");
  const int lo = std::max(0, k - n + ell);
  const int hi = std::min(ell - 1, k);
  if (r < lo || r > hi) return kNegInf;
  return log_binom(k, r) + log_binom(n - 1 - k, ell - 1 - r) -
         log_binom(n - 1, ell - 1);
}

double pdm_pmf(int r, int ell, int n, int k) {
  const double lp = pdm_logpmf(r, ell, n, k);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

double pe_pmf(std::int64_t s, int ell, int n, std::int64_t m) {
  const double n2 = 0.5 * static_cast<double>(n) * (n - 1);
  const double ell2 = 0.5 * static_cast<double>(ell) * (ell - 1);
  if (m < 0 || m > static_cast<std::int64_t>(n2))
    throw std::invalid_argument("pe_pmf: invalid edge count");
  const double sd = static_cast<double>(s);
  if (sd < std::max(0.0, static_cast<double>(m) - n2 + ell2) ||
      sd > std::min(ell2, static_cast<double>(m)))
    return 0.0;
  const double lp = log_binom(static_cast<double>(m), sd) +
                    log_binom(n2 - static_cast<double>(m), ell2 - sd) -
                    log_binom(n2, ell2);
  return std::exp(lp);
}

double mgf_pdm(double beta, int ell, int n, int k) {
  const int lo = std::max(0, k - n + ell);
  const int hi = std::min(ell - 1, k);
  LogSumExp acc;
  for (int r = lo; r <= hi; ++r) {
    acc.add(beta * r + pdm_logpmf(r, ell, n, k));
  }
  return acc.value();
}

double mgf_even(double beta, int ell, int n, int k) {
  assert(ell >= 2 && static_cast<double>(ell) < std::sqrt(n));
  const double log_m1 = mgf_pdm(beta, ell, n, k);  // single-vertex log-MGF
  const double log_p_top = pdm_logpmf(k, ell, n, k);
  const double log_p_zero = pdm_logpmf(0, ell, n, k);
  static const double kLogHalf = std::log(0.5);
  LogSumExp acc;
  acc.add(ell * log_m1);
  if (log_p_top != kNegInf)
    acc.add(beta * (static_cast<double>(ell) * k + 1.0) + ell * log_p_top +
            kLogHalf);
  if (log_p_zero != kNegInf)
    acc.add(-beta + ell * log_p_zero + kLogHalf);
  // 2 / (1 + cosh beta); cosh(10) ~ 1.1e4 so the direct form is fine.
  const double log_pref = std::log(2.0) - std::log1p(std::cosh(beta));
  return log_pref + acc.value();
}

WindowTerms window_terms(const SubgraphEdgeStats& stats, double alpha,
                         double beta) {
  const double var_r = stats.var_r();
  if (!(var_r > 0.0))
    throw std::domain_error("window_terms: sigma^2 (1 - rho) must be > 0");
  WindowTerms w;
  w.sigma_tilde = std::sqrt(var_r);

  // Tilted mean 2*ell2*nu = mu + beta*var_r; window ends per the integral
  // limits 2 s_lo - 1 and 2 s_hi + 1 (continuity correction applied once).
  const double tilted_mean = stats.mu_ell + beta * var_r;
  w.w_lo = (2.0 * stats.s_lo - 1.0 - tilted_mean) / w.sigma_tilde;
  w.w_hi = (2.0 * stats.s_hi + 1.0 - tilted_mean) / w.sigma_tilde;

  const double alpha_prime = alpha - stats.k * beta;
  w.g = alpha_prime * stats.ell + beta * stats.mu_ell + 0.5 * beta * beta * var_r;

  w.log_delta_Phi = log_gauss_mass(w.w_lo, w.w_hi);
  w.delta_Phi = w.log_delta_Phi == kNegInf ? 0.0 : std::exp(w.log_delta_Phi);

  const double la = norm_logpdf(w.w_hi);
  const double lb = norm_logpdf(w.w_lo);
  if (la == lb) {
    w.sign_delta_phi = 0;
    w.log_abs_delta_phi = kNegInf;
    w.delta_phi = 0.0;
  } else if (la > lb) {
    w.sign_delta_phi = +1;
    w.log_abs_delta_phi = log_diff_exp(la, lb);
  } else {
    w.sign_delta_phi = -1;
    w.log_abs_delta_phi = log_diff_exp(lb, la);
  }
  if (w.sign_delta_phi != 0)
    w.delta_phi = w.sign_delta_phi * std::exp(w.log_abs_delta_phi);
  return w;
}

}  // namespace ising
