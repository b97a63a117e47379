#include "ising/numeric.hpp"

#include <cassert>
#include <cfloat>

#if defined(__GLIBC__) || defined(__APPLE__)
#define ISING_HAVE_LGAMMA_R 1
#endif

namespace ising {

double log_gamma(double x) {
#ifdef ISING_HAVE_LGAMMA_R
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_binom(double n, double k) {
  if (k < 0.0 || k > n) return kNegInf;
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double log1p_exp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double log1m_exp(double x) {
  assert(x <= 0.0);
  if (x == 0.0) return kNegInf;
  static const double kLogHalf = std::log(0.5);
  if (x > kLogHalf) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

double log_diff_exp(double a, double b) {
  assert(a >= b || (a == kNegInf && b == kNegInf));
  if (b == kNegInf) return a;
  if (a == b) return kNegInf;
  return a + log1m_exp(b - a);
}

double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;

// Upper-tail log for x >= 0. erfc stays normal down to ~1e-308 which covers
// x <= 35; beyond that use the Mills-ratio series
//   Phi_c(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - ...).
double log_upper_tail_nonneg(double x) {
  if (x <= 35.0) {
    return std::log(0.5 * std::erfc(x / kSqrt2));
  }
  const double x2 = x * x;
  const double series =
      1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2) +
      105.0 / (x2 * x2 * x2 * x2);
  return norm_logpdf(x) - std::log(x) + std::log(series);
}
}  // namespace

double norm_log_upper_tail(double x) {
  if (x >= 0.0) return log_upper_tail_nonneg(x);
  // P(Z > x) = 1 - P(Z > -x), and P(Z > -x) <= Phi_c(0) = 1/2.
  const double tail = std::exp(log_upper_tail_nonneg(-x));
  return std::log1p(-tail);
}

double log_gauss_mass(double lo, double hi) {
  assert(lo <= hi);
  if (lo == hi) return kNegInf;
  if (lo >= 0.0) {
    const double a = log_upper_tail_nonneg(lo);
    const double b = log_upper_tail_nonneg(hi);
    return log_diff_exp(a, b);
  }
  if (hi <= 0.0) {
    return log_gauss_mass(-hi, -lo);
  }
  // Interval straddles 0: mass >= Phi(min(|lo|, hi)) - 1/2, no underflow.
  const double upper = 0.5 * std::erfc(hi / kSqrt2);
  const double lower = 0.5 * std::erfc(-lo / kSqrt2);
  const double mass = 1.0 - upper - lower;
  if (mass <= 0.0) return kNegInf;
  return std::log(mass);
}

}  // namespace ising
