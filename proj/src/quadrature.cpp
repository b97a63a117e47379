#include "ising/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace ising {

namespace {

QuadNodes compute_gauss_legendre(int n) {
  // Newton iteration on P_n, roots seeded by the Chebyshev-like estimate.
  QuadNodes out;
  out.x.assign(n, 0.0);
  out.w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  const double eps = 1e-15;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= eps) break;
    }
    out.x[i] = -z;
    out.x[n - 1 - i] = z;
    out.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    out.w[n - 1 - i] = out.w[i];
  }
  return out;
}

}  // namespace

const QuadNodes& gauss_legendre(int points) {
  static std::mutex mu;
  static std::unordered_map<int, QuadNodes> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(points);
  if (it == cache.end()) {
    it = cache.emplace(points, compute_gauss_legendre(points)).first;
  }
  return it->second;
}

QuadNodes make_nodes(const QuadConfig& cfg, double a, double b) {
  cfg.validate();
  QuadNodes out;
  const int n = cfg.points;
  out.x.resize(n);
  out.w.resize(n);
  if (cfg.rule == QuadConfig::Rule::gauss_legendre) {
    const QuadNodes& ref = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
      out.x[i] = mid + half * ref.x[i];
      out.w[i] = half * ref.w[i];
    }
  } else {
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
      out.x[i] = a + h * i;
      out.w[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
  }
  return out;
}

}  // namespace ising
