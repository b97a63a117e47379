#pragma once

#include "ising/graph.hpp"

namespace ising {

// Large-n closed form for the circular 1-NN chain (k = 2):
//   log Z = n(alpha - beta)/2
//         + n log[ e^{beta/2} cosh(alpha/2)
//                  + sqrt(e^beta cosh^2(alpha/2) - 2 sinh beta) ].
// The radicand is >= e^{-beta} > 0 for beta >= 0; guarded anyway.
double log_z_1nn(double alpha, double beta, int n);

// Exact finite-n circular-chain log Z via both transfer-matrix eigenvalues:
//   log Z = n(alpha - beta)/2 + log(lambda_+^n + lambda_-^n),
//   lambda_+- = e^{beta/2} cosh(alpha/2) +- sqrt(e^beta cosh^2(alpha/2)
//                                               - 2 sinh beta).
// log_z_1nn keeps only lambda_+ (the large-n form); the difference is the
// non-extensive log(1 + (l_-/l_+)^n), visible only near alpha = 0 at large
// beta.
double log_z_chain_exact(double alpha, double beta, int n);

struct BruteForceResult {
  double log_z = 0.0;
  double m_active = 0.0;
  double s_spin = 0.0;
  double matches = 0.0;
};

// Exact summation over all 2^n configurations (n <= 24). Gray-code state
// walk keeps each step O(degree); expectations use a two-pass max shift.
BruteForceResult brute_force(const Graph& g, double alpha, double beta);

}  // namespace ising
