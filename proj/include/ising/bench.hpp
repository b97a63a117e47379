#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ising/moments.hpp"
#include "ising/partition.hpp"

namespace ising {

struct GridSpec {
  std::vector<double> alphas;
  std::vector<double> betas;

  // 19 uniform alphas on (0, 5]; 58 log-uniform betas on [0.005, 10].
  static GridSpec paper_default();
  static GridSpec uniform(double a_lo, double a_hi, int na, double b_lo,
                          double b_hi, int nb, bool log_beta);
  void validate() const;
  std::size_t cells() const { return alphas.size() * betas.size(); }
};

struct Surface {
  GridSpec grid;
  std::vector<double> values;    // alphas-major
  std::vector<std::uint8_t> ok;  // per-cell status
  std::string label;

  double& at(std::size_t i, std::size_t j) {
    return values[i * grid.betas.size() + j];
  }
  double at(std::size_t i, std::size_t j) const {
    return values[i * grid.betas.size() + j];
  }
  bool cell_ok(std::size_t i, std::size_t j) const {
    return ok[i * grid.betas.size() + j] != 0;
  }

  void to_csv(std::ostream& os, const std::string& provenance = "") const;
  static Surface from_csv(std::istream& is);
};

enum class Quantity { log_z, m_active, s_spin };

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

// Evaluate one value per grid cell; per-cell failures are isolated in the
// status plane. `threads <= 1` runs sequentially.
Surface evaluate_surface(Quantity q, ZMethod method, int n, int k,
                         const GridSpec& grid, const QuadConfig& quad = {},
                         int threads = 1);

// Fully general cell evaluator (used by the acceptance suite to wrap MCMC
// references into the same surface/discrepancy plumbing).
Surface evaluate_surface_with(
    const GridSpec& grid, const std::string& label,
    const std::function<double(double alpha, double beta)>& f,
    int threads = 1);

struct Discrepancy {
  double l1 = 0.0;
  double r1 = 0.0;
  double l1_over_v = 0.0;
};

// Grid-trapezoid discrepancies between the reference surface `a` and `b`:
//   L1 = V^{-1} I(|a-b|),  R1 = V^{-1} I(|a-b|/|a|),  L1/V_mc with
//   V_mc = V^{-1} I(a). Cells with |a| < 1e-12 are dropped from R1.
Discrepancy discrepancy(const Surface& a, const Surface& b);

}  // namespace ising
