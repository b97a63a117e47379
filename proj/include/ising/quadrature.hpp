#pragma once

#include <stdexcept>
#include <vector>

namespace ising {

struct QuadConfig {
  enum class Rule { trapezoid, gauss_legendre };
  int points = 2048;
  Rule rule = Rule::gauss_legendre;

  void validate() const {
    if (points < 16) throw std::invalid_argument("quadrature needs >= 16 points");
  }
};

struct QuadNodes {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1, 1]; cached per point count.
const QuadNodes& gauss_legendre(int points);

// Nodes/weights on [a, b] for the given rule.
QuadNodes make_nodes(const QuadConfig& cfg, double a, double b);

}  // namespace ising
