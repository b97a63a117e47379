#pragma once

#include <cstdint>

namespace ising {

// Moments of the edge count of a random vertex-induced subgraph with ell
// vertices, drawn from a regular graph on n vertices of degree k. Everything
// lives on the doubled scale r = 2s (sum of within-subgraph degrees).
//
// ell is real-valued: the integral estimators evaluate these fields at
// ell = n*y along the quadrature abscissae.
struct SubgraphEdgeStats {
  double n = 0, k = 0, ell = 0;
  double ell2 = 0;         // ell(ell-1)/2
  double theta = 0;        // edge density k/(n-1)
  double y_n1 = 0;         // (ell-1)/(n-1)
  double y_n2 = 0;         // (ell-2)/(n-2)
  double mu_ell = 0;       // E r = 2*ell2*theta
  double sigma2_ell = 0;   // 2*ell2*theta(1-theta)(1-y_n2)
  double rho_ell = 0;      // (ell-1)(n-2k)/{(n-2)(n-k-1)}
  double nu_ell = 0;       // theta{1 + beta(1-theta)(1-y_n2)(1-rho)}
  double s_lo = 0;         // max(0, k-n+ell) * ell/2
  double s_hi = 0;         // min(ell-1, k) * ell/2
  double mu_ell1 = 0;      // (ell-1)*theta
  double sigma2_ell1 = 0;  // (ell-1)(1-y_n1)theta(1-theta)
  double beta = 0;         // tilt baked into nu_ell

  // Var(r) = sigma2_ell * (1 - rho_ell).
  double var_r() const { return sigma2_ell * (1.0 - rho_ell); }
};

SubgraphEdgeStats subgraph_stats(double n, double k, double ell, double beta);
SubgraphEdgeStats subgraph_stats(int n, int k, int ell, double beta);

// Hypergeometric single-vertex degree law within an ell-subset:
//   p(r | ell) = C(k,r) C(n-1-k, ell-1-r) / C(n-1, ell-1),
// support max(0, k-n+ell) <= r <= min(ell-1, k); zero outside.
double pdm_logpmf(int r, int ell, int n, int k);
double pdm_pmf(int r, int ell, int n, int k);

// Edge-sampling hypergeometric over the C(n,2) latent edges:
//   p_e(s | ell2) = C(m,s) C(n2-m, ell2-s) / C(n2, ell2).
double pe_pmf(std::int64_t s, int ell, int n, std::int64_t m);

// log E exp(beta * r) for r ~ p(.|ell); 0 at beta = 0.
double mgf_pdm(double beta, int ell, int n, int k);

// Small-ell even-parity MGF estimate:
//   2/(1+cosh b) [ M^ell + e^{b(ell k + 1)} p(k|ell)^ell / 2
//                        + e^{-b} p(0|ell)^ell / 2 ],  returned in log scale.
// Contract: 2 <= ell < sqrt(n).
double mgf_even(double beta, int ell, int n, int k);

// Gaussian window terms entering every estimator series. The doubled-scale
// integration window is [2*s_lo - 1, 2*s_hi + 1] against a normal with mean
// mu_ell + beta*var_r and sd sqrt(var_r):
//   g      = alpha'*ell + beta*mu_ell + beta^2*var_r/2
//   dPhi   = Phi(w_hi) - Phi(w_lo)
//   dphi   = phi(w_hi) - phi(w_lo)
// Log-scale companions are carried so series at beta*k*n ~ 1e6 never leave
// log space.
struct WindowTerms {
  double g = 0;
  double delta_Phi = 0;
  double delta_phi = 0;
  double log_delta_Phi = 0;
  double log_abs_delta_phi = 0;
  int sign_delta_phi = 0;
  double w_lo = 0, w_hi = 0;
  double sigma_tilde = 0;  // sqrt(var_r)
};

WindowTerms window_terms(const SubgraphEdgeStats& stats, double alpha,
                         double beta);

}  // namespace ising
