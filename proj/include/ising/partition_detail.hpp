#pragma once

#include "ising/numeric.hpp"
#include "ising/partition.hpp"

namespace ising::detail {

// One shared pass over the quadrature nodes: the Z, M and S integral
// estimators differ only in the power of y and the window bracket, so a grid
// sweep computes all three from a single window evaluation per node.
struct TildeParts {
  double log_a = kNegInf;
  double log_b = kNegInf;
  double log_j_half = kNegInf;
  double log_z = kNegInf;
  double log_j_mhalf = kNegInf;
  double log_c_phi_m = kNegInf;
  SignedLogSum::Result s_integral{0, kNegInf};
  SignedLogSum::Result d_phi_m{0, kNegInf};
  int quad_points = 0;
};

TildeParts tilde_parts(const IsingParams& p, int n, int k,
                       const QuadConfig& quad, bool with_moments);

}  // namespace ising::detail
