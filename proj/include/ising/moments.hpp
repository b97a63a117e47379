#pragma once

#include <string>

#include "ising/partition.hpp"
#include "ising/quadrature.hpp"

namespace ising {

enum class MomentMethod { phi, tilde_phi, mcmc, brute };

std::string to_string(MomentMethod m);

struct MomentEstimate {
  double m_active = 0.0;
  double s_spin = 0.0;
  MomentMethod method = MomentMethod::tilde_phi;
};

// Series-form moment estimators (denominator Z_phi) and their integral-form
// counterparts (denominator Z-tilde). All expect alpha >= 0; negative alpha
// callers can map through the complement identities
//   M(alpha) = n - M(-alpha),  S(alpha) = m - k M(-alpha) + S(-alpha).
double m_phi(const IsingParams& p, int n, int k);
// m_edges scales the spin estimate; the derivation produces kn/2 and the
// near-regular lattices substitute their actual edge count (default < 0
// means nominal nk/2).
double s_phi(const IsingParams& p, int n, int k, double m_edges = -1.0);
double m_tilde_phi(const IsingParams& p, int n, int k,
                   const QuadConfig& quad = {});
double s_tilde_phi(const IsingParams& p, int n, int k,
                   const QuadConfig& quad = {}, double m_edges = -1.0);

// matches = m_nominal - (k*M - 2*S).
double expected_matches(double m_active, double s_spin, int n, int k);

// Convenience dispatcher for phi / tilde_phi (mcmc and brute run through
// their own modules, which own graphs and chains).
MomentEstimate moments(const IsingParams& p, int n, int k, MomentMethod method,
                       const QuadConfig& quad = {});

}  // namespace ising
