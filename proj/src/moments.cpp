#include "ising/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "ising/edgestats.hpp"
#include "ising/numeric.hpp"
#include "ising/partition_detail.hpp"

namespace ising {

namespace {

// Hard physical-range assertion; round-off overshoot within slack is clamped.
double check_range(double value, double upper, const char* what) {
  const double slack = 1e-9 * std::max(1.0, upper);
  if (!(value >= -slack && value <= upper + slack))
    throw std::domain_error(std::string(what) +
                            " estimate left its physical range");
  return std::min(std::max(value, 0.0), upper);
}

}  // namespace

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::phi: return "phi";
    case MomentMethod::tilde_phi: return "tilde_phi";
    case MomentMethod::mcmc: return "mcmc";
    case MomentMethod::brute: return "brute";
  }
  return "?";
}

double m_phi(const IsingParams& p, int n, int k) {
  if (n < 3) throw std::invalid_argument("m_phi: n >= 3");
  const double log_z = log_z_phi(p, n, k).log_z;
  const double ap = p.alpha_prime(k);
  const double log_n = std::log(static_cast<double>(n));
  LogSumExp num;
  num.add(log_n + ap * n + p.beta * k * n);
  num.add(log_n + ap);
  for (int ell = 2; ell <= n - 1; ++ell) {
    const auto st = subgraph_stats(n, k, ell, p.beta);
    const auto w = window_terms(st, p.alpha, p.beta);
    if (w.log_delta_Phi == kNegInf) continue;
    num.add(log_binom(n, ell) + std::log(static_cast<double>(ell)) + w.g +
            w.log_delta_Phi);
  }
  return check_range(std::exp(num.value() - log_z), n, "m_phi");
}

double s_phi(const IsingParams& p, int n, int k, double m_edges) {
  if (n < 3) throw std::invalid_argument("s_phi: n >= 3");
  const double log_z = log_z_phi(p, n, k).log_z;
  const double m_nom = m_edges > 0.0 ? m_edges : 0.5 * static_cast<double>(n) * k;
  const double ap = p.alpha_prime(k);
  static const double kLogHalf = std::log(0.5);

  SignedLogSum num;
  num.add(+1, std::log(m_nom) + ap * n + p.beta * k * n);
  for (int ell = 2; ell <= n - 1; ++ell) {
    const auto st = subgraph_stats(n, k, ell, p.beta);
    const auto w = window_terms(st, p.alpha, p.beta);
    const double var_r = st.var_r();
    const double lead = st.mu_ell + p.beta * var_r;  // 2 theta ell2 + beta var
    const double base = kLogHalf + log_binom(n, ell) + w.g;
    if (w.log_delta_Phi != kNegInf)
      num.add(+1, base + std::log(lead) + w.log_delta_Phi);
    if (w.sign_delta_phi != 0)
      num.add(-w.sign_delta_phi,
              base + std::log(w.sigma_tilde) + w.log_abs_delta_phi);
  }
  const auto total = num.result();
  if (total.sign <= 0)
    throw std::domain_error(
        "s_phi: series numerator is non-positive (approximation regime break)");
  return check_range(std::exp(total.log_abs - log_z), m_nom, "s_phi");
}

double m_tilde_phi(const IsingParams& p, int n, int k, const QuadConfig& quad) {
  const auto parts = detail::tilde_parts(p, n, k, quad, true);
  const double ap = p.alpha_prime(k);
  const double log_n = std::log(static_cast<double>(n));
  LogSumExp num;
  num.add(ap * n + p.beta * k * n);
  num.add(ap);
  num.add(parts.log_j_mhalf);
  num.add(parts.log_c_phi_m - log_n);
  return check_range(std::exp(log_n + num.value() - parts.log_z), n,
                     "m_tilde_phi");
}

double s_tilde_phi(const IsingParams& p, int n, int k, const QuadConfig& quad,
                   double m_edges) {
  const auto parts = detail::tilde_parts(p, n, k, quad, true);
  const double m_nom = m_edges > 0.0 ? m_edges : 0.5 * static_cast<double>(n) * k;
  const double ap = p.alpha_prime(k);
  SignedLogSum num;
  num.add(+1, ap * n + p.beta * k * n);
  num.add(parts.d_phi_m.sign, parts.d_phi_m.log_abs);
  num.add(parts.s_integral.sign, parts.s_integral.log_abs);
  const auto total = num.result();
  if (total.sign <= 0)
    throw std::domain_error(
        "s_tilde_phi: numerator is non-positive (approximation regime break)");
  return check_range(std::exp(std::log(m_nom) + total.log_abs - parts.log_z),
                     m_nom, "s_tilde_phi");
}

double expected_matches(double m_active, double s_spin, int n, int k) {
  const double m_nom = 0.5 * static_cast<double>(n) * k;
  return check_range(m_nom - (k * m_active - 2.0 * s_spin), m_nom,
                     "expected_matches");
}

MomentEstimate moments(const IsingParams& p, int n, int k, MomentMethod method,
                       const QuadConfig& quad) {
  switch (method) {
    case MomentMethod::phi:
      return {m_phi(p, n, k), s_phi(p, n, k), MomentMethod::phi};
    case MomentMethod::tilde_phi:
      return {m_tilde_phi(p, n, k, quad), s_tilde_phi(p, n, k, quad),
              MomentMethod::tilde_phi};
    default:
      throw std::invalid_argument("moments: method requires a chain or graph");
  }
}

}  // namespace ising
