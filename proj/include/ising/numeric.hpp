#pragma once

#include <cmath>
#include <limits>

// Log-scale scalar kernels shared by every module. All partition-function
// work happens in log space: exp(alpha'*n + beta*k*n) overflows double for
// every realistic lattice, so nothing here ever materializes a raw weight.

namespace ising {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

// Thread-safe log-gamma (std::lgamma may race on signgam).
double log_gamma(double x);

// log C(n, k); real arguments allowed, -inf outside 0 <= k <= n.
double log_binom(double n, double k);

// log(1 + e^x) without overflow.
double log1p_exp(double x);

// log(1 - e^x) for x <= 0; -inf at x == 0.
double log1m_exp(double x);

// log(e^a - e^b) for a >= b.
double log_diff_exp(double a, double b);

// Logistic sigmoid, stable at both tails.
double logistic(double x);

// Standard normal log-density.
inline double norm_logpdf(double w) { return -0.5 * w * w - 0.5 * kLog2Pi; }

// log P(Z > x) for standard normal Z; asymptotic series past the range
// where erfc underflows.
double norm_log_upper_tail(double x);

// log(Phi(hi) - Phi(lo)), lo <= hi, stable when the interval sits far out
// in either tail.
double log_gauss_mass(double lo, double hi);

// Streaming log-sum-exp with running max rescale.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double value() const {
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_);
  }
  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// Signed log-space accumulator: positive and negative streams kept apart,
// combined once at the end. Needed by the spin-moment series whose bracket
// mixes signs at magnitudes far beyond double range.
class SignedLogSum {
 public:
  void add(int sign, double log_abs) {
    if (sign > 0) {
      pos_.add(log_abs);
    } else if (sign < 0) {
      neg_.add(log_abs);
    }
  }
  // sign in {-1, 0, +1}; log_abs = log |sum|.
  struct Result {
    int sign;
    double log_abs;
  };
  Result result() const {
    const double p = pos_.value();
    const double q = neg_.value();
    if (p == kNegInf && q == kNegInf) return {0, kNegInf};
    if (p >= q) {
      const double d = log_diff_exp(p, q);
      return {d == kNegInf ? 0 : +1, d};
    }
    return {-1, log_diff_exp(q, p)};
  }
  double log_positive() const { return pos_.value(); }
  double log_negative() const { return neg_.value(); }

 private:
  LogSumExp pos_;
  LogSumExp neg_;
};

}  // namespace ising
