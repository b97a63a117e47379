#include "ising/partition.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ising/edgestats.hpp"
#include "ising/exact.hpp"
#include "ising/numeric.hpp"
#include "ising/partition_detail.hpp"

namespace ising {

void IsingParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("IsingParams must be finite");
  if (beta < 0.0)
    throw std::domain_error("beta < 0 (antiferromagnetic) is not supported");
}

std::string to_string(ZMethod m) {
  switch (m) {
    case ZMethod::phi: return "phi";
    case ZMethod::h_phi: return "h_phi";
    case ZMethod::tilde_phi: return "tilde_phi";
    case ZMethod::one_nn_exact: return "one_nn_exact";
    case ZMethod::brute: return "brute";
    case ZMethod::path_sampling: return "path_sampling";
  }
  return "?";
}

ZMethod z_method_from_string(const std::string& s) {
  if (s == "phi") return ZMethod::phi;
  if (s == "hphi" || s == "h_phi") return ZMethod::h_phi;
  if (s == "tilde" || s == "tilde_phi") return ZMethod::tilde_phi;
  if (s == "1nn" || s == "one_nn_exact") return ZMethod::one_nn_exact;
  if (s == "brute") return ZMethod::brute;
  if (s == "pathsample" || s == "path_sampling") return ZMethod::path_sampling;
  throw std::invalid_argument("unknown method: " + s);
}

double log_a_phi(const IsingParams& p, int n, int k) {
  p.validate();
  const double ap = p.alpha_prime(k);
  LogSumExp acc;
  acc.add(0.0);
  acc.add(ap * n + p.beta * k * n);
  acc.add(std::log(static_cast<double>(n)) + ap);
  return acc.value();
}

double log_sigma(int h, const IsingParams& p, int n, int k) {
  p.validate();
  if (h < 2 || h > n - 1)
    throw std::invalid_argument("log_sigma: need 2 <= h <= n-1");
  LogSumExp acc;
  for (int ell = h; ell <= n - 1; ++ell) {
    const auto stats = subgraph_stats(n, k, ell, p.beta);
    const auto w = window_terms(stats, p.alpha, p.beta);
    if (w.log_delta_Phi == kNegInf) continue;
    acc.add(log_binom(n, ell) + w.g + w.log_delta_Phi);
  }
  return acc.value();
}

LogZEstimate log_z_phi(const IsingParams& p, int n, int k) {
  if (n < 3) throw std::invalid_argument("log_z_phi: n >= 3");
  LogSumExp acc;
  acc.add(log_a_phi(p, n, k));
  acc.add(log_sigma(2, p, n, k));
  LogZEstimate est{acc.value(), ZMethod::phi, 0};
  assert(est.log_z > 0.0);
  return est;
}

LogZEstimate log_z_h_phi(const IsingParams& p, int n, int k) {
  if (n < 9) throw std::invalid_argument("log_z_h_phi: n >= 9");
  p.validate();
  int root = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while ((root + 1) * (root + 1) <= n) ++root;
  while (root * root > n) --root;

  const double ap = p.alpha_prime(k);
  LogSumExp acc;
  acc.add(log_a_phi(p, n, k));
  for (int ell = 2; ell <= root - 1; ++ell) {
    acc.add(log_binom(n, ell) + ap * ell + mgf_even(p.beta, ell, n, k));
  }
  acc.add(log_sigma(root, p, n, k));
  LogZEstimate est{acc.value(), ZMethod::h_phi, 0};
  assert(est.log_z > 0.0);
  return est;
}

namespace detail {

TildeParts tilde_parts(const IsingParams& p, int n, int k,
                       const QuadConfig& quad, bool with_moments) {
  p.validate();
  quad.validate();
  if (n < 3) throw std::invalid_argument("tilde estimators need n >= 3");

  TildeParts out;
  out.quad_points = quad.points;
  const double dn = static_cast<double>(n);
  const double n2 = 0.5 * dn * (dn - 1.0);
  const double log_n = std::log(dn);
  const double log_n2 = std::log(n2);

  out.log_a = log_a_phi(p, n, k);

  // Boundary windows at ell = 2 and ell = n-1 feed B_phi, C_{phi.M}, D_{phi.M}.
  const auto st2 = subgraph_stats(n, k, 2, p.beta);
  const auto stn1 = subgraph_stats(n, k, n - 1, p.beta);
  const auto w2 = window_terms(st2, p.alpha, p.beta);
  const auto wn1 = window_terms(stn1, p.alpha, p.beta);

  static const double kLogHalf = std::log(0.5);
  {
    LogSumExp b;
    b.add(log_n + wn1.g + wn1.log_delta_Phi);
    b.add(log_n2 + w2.g + w2.log_delta_Phi);
    out.log_b = kLogHalf + b.value();
  }

  if (with_moments) {
    LogSumExp c;
    c.add(wn1.g + wn1.log_delta_Phi);
    c.add(w2.g + w2.log_delta_Phi);
    out.log_c_phi_m = log_n2 + c.value();

    // D_{phi.M} = 1/2 { zeta1(2) dPhi(2) - (n-1)/(2k) zeta2(2) } e^{g(2)}
    //           + 1/2 { (n-2) zeta1(n-1) dPhi(n-1) - zeta2(n-1)/k } e^{g(n-1)}
    auto zeta1 = [&](const SubgraphEdgeStats& st) {
      return 1.0 + p.beta * (1.0 - st.theta) * (1.0 - st.y_n2) *
                       (1.0 - st.rho_ell);
    };
    SignedLogSum d;
    d.add(+1, kLogHalf + std::log(zeta1(st2)) + w2.log_delta_Phi + w2.g);
    if (w2.sign_delta_phi != 0)
      d.add(-w2.sign_delta_phi,
            kLogHalf + std::log((dn - 1.0) / (2.0 * k)) +
                std::log(w2.sigma_tilde) + w2.log_abs_delta_phi + w2.g);
    d.add(+1, kLogHalf + std::log(dn - 2.0) + std::log(zeta1(stn1)) +
                  wn1.log_delta_Phi + wn1.g);
    if (wn1.sign_delta_phi != 0)
      d.add(-wn1.sign_delta_phi,
            kLogHalf - std::log(static_cast<double>(k)) +
                std::log(wn1.sigma_tilde) + wn1.log_abs_delta_phi + wn1.g);
    out.d_phi_m = d.result();
  }

  // Quadrature over y in [2/n, 1 - 1/n]. Exponents:
  //   h_t(y) = -(n(1-y) + 1/2) log(1-y) - (n y + t) log y
  // with t = 1/2 for Z, t = -1/2 for the M series, t = -3/2 for the S series.
  const auto nodes = make_nodes(quad, 2.0 / dn, 1.0 - 1.0 / dn);
  const double log_front = 0.5 * (std::log(dn) - kLog2Pi);
  LogSumExp j_half, j_mhalf;
  SignedLogSum s_int;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double y = nodes.x[i];
    if (nodes.w[i] <= 0.0) continue;
    const double log_w = std::log(nodes.w[i]);
    const double ell = dn * y;
    const auto st = subgraph_stats(dn, static_cast<double>(k), ell, p.beta);
    const auto wt = window_terms(st, p.alpha, p.beta);
    const double log_y = std::log(y);
    const double log_1my = std::log1p(-y);
    const double h_half = -(dn * (1.0 - y) + 0.5) * log_1my -
                          (dn * y + 0.5) * log_y;
    const double base = log_front + h_half + wt.g + log_w;
    if (std::isnan(base) || base == std::numeric_limits<double>::infinity())
      throw std::domain_error("tilde quadrature: non-finite integrand at y=" +
                              std::to_string(y));
    if (wt.log_delta_Phi != kNegInf) j_half.add(base + wt.log_delta_Phi);
    if (!with_moments) continue;

    // y^{-t} shifts: J_{-1/2} adds +log y, the S series adds +2 log y.
    if (wt.log_delta_Phi != kNegInf)
      j_mhalf.add(base + log_y + wt.log_delta_Phi);
    const double zeta1 = 1.0 + p.beta * (1.0 - st.theta) * (1.0 - st.y_n2) *
                                   (1.0 - st.rho_ell);
    const double s_base = base + 2.0 * log_y;
    if (wt.log_delta_Phi != kNegInf)
      s_int.add(+1, s_base + std::log(zeta1) + wt.log_delta_Phi);
    if (wt.sign_delta_phi != 0)
      s_int.add(-wt.sign_delta_phi,
                s_base - std::log(static_cast<double>(k) * dn) - 2.0 * log_y +
                    std::log(wt.sigma_tilde) + wt.log_abs_delta_phi);
  }
  out.log_j_half = j_half.value();
  if (with_moments) {
    out.log_j_mhalf = j_mhalf.value();
    out.s_integral = s_int.result();
  }

  LogSumExp z;
  z.add(out.log_a);
  z.add(out.log_b);
  z.add(out.log_j_half);
  out.log_z = z.value();
  return out;
}

}  // namespace detail

LogZEstimate log_z_tilde_phi(const IsingParams& p, int n, int k,
                             const QuadConfig& quad) {
  const auto parts = detail::tilde_parts(p, n, k, quad, false);
  LogZEstimate est{parts.log_z, ZMethod::tilde_phi, parts.quad_points};
  assert(est.log_z > 0.0);
  return est;
}

LogZEstimate log_z(const IsingParams& p, int n, int k, ZMethod method,
                   const QuadConfig& quad) {
  p.validate();
  if (p.alpha < 0.0) {
    // Z(-a, b) = e^{-a n} Z(a, b)  =>  log Z(alpha) = alpha*n + log Z(-alpha).
    IsingParams reflected{-p.alpha, p.beta};
    LogZEstimate est = log_z(reflected, n, k, method, quad);
    est.log_z += p.alpha * n;
    return est;
  }
  switch (method) {
    case ZMethod::phi: return log_z_phi(p, n, k);
    case ZMethod::h_phi: return log_z_h_phi(p, n, k);
    case ZMethod::tilde_phi: return log_z_tilde_phi(p, n, k, quad);
    case ZMethod::one_nn_exact:
      return {log_z_1nn(p.alpha, p.beta, n), ZMethod::one_nn_exact, 0};
    default:
      throw std::invalid_argument(
          "log_z: method requires a concrete graph (use brute/pathsample)");
  }
}

}  // namespace ising
