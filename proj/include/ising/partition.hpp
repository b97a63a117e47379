#pragma once

#include <string>

#include "ising/quadrature.hpp"

namespace ising {

struct IsingParams {
  double alpha = 0.0;
  double beta = 0.0;

  double alpha_prime(double k) const { return alpha - k * beta; }
  void validate() const;  // rejects beta < 0 and non-finite values
};

enum class ZMethod { phi, h_phi, tilde_phi, one_nn_exact, brute, path_sampling };

std::string to_string(ZMethod m);
ZMethod z_method_from_string(const std::string& s);

struct LogZEstimate {
  double log_z = 0.0;
  ZMethod method = ZMethod::tilde_phi;
  int quad_points = 0;
};

// log A_phi = log(1 + e^{alpha' n + beta k n} + n e^{alpha'}).
double log_a_phi(const IsingParams& p, int n, int k);

// log Sigma(h) = log sum_{ell=h}^{n-1} C(n,ell) e^{g(ell)} dPhi(ell).
double log_sigma(int h, const IsingParams& p, int n, int k);

// Direct O(n) series estimators and the Euler-Maclaurin + Stirling integral
// form; all require alpha >= 0 (callers use log_z() for the reflection).
LogZEstimate log_z_phi(const IsingParams& p, int n, int k);
LogZEstimate log_z_h_phi(const IsingParams& p, int n, int k);
LogZEstimate log_z_tilde_phi(const IsingParams& p, int n, int k,
                             const QuadConfig& quad = {});

// Any-sign dispatcher: for alpha < 0 applies
//   log Z(alpha, beta) = alpha*n + log Z(-alpha, beta)
// exactly, then evaluates the chosen estimator at -alpha.
LogZEstimate log_z(const IsingParams& p, int n, int k, ZMethod method,
                   const QuadConfig& quad = {});

}  // namespace ising
