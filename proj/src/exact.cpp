#include "ising/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ising {

double log_z_1nn(double alpha, double beta, int n) {
  if (n < 3) throw std::invalid_argument("log_z_1nn requires n >= 3");
  if (beta < 0.0) throw std::domain_error("log_z_1nn requires beta >= 0");
  const double ch = std::cosh(alpha / 2.0);
  const double radicand = std::exp(beta) * ch * ch - 2.0 * std::sinh(beta);
  if (radicand < 0.0)
    throw std::domain_error("log_z_1nn: negative radicand");
  const double bracket = std::exp(beta / 2.0) * ch + std::sqrt(radicand);
  return 0.5 * n * (alpha - beta) + n * std::log(bracket);
}

double log_z_chain_exact(double alpha, double beta, int n) {
  if (n < 3) throw std::invalid_argument("log_z_chain_exact requires n >= 3");
  if (beta < 0.0) throw std::domain_error("log_z_chain_exact requires beta >= 0");
  const double ch = std::cosh(alpha / 2.0);
  const double radicand = std::exp(beta) * ch * ch - 2.0 * std::sinh(beta);
  if (radicand < 0.0)
    throw std::domain_error("log_z_chain_exact: negative radicand");
  const double root = std::sqrt(radicand);
  const double log_lp = std::log(std::exp(beta / 2.0) * ch + root);
  const double lm = std::exp(beta / 2.0) * ch - root;
  double log_tr = n * log_lp;
  if (lm > 0.0) log_tr += std::log1p(std::exp(n * (std::log(lm) - log_lp)));
  return 0.5 * n * (alpha - beta) + log_tr;
}

namespace {

struct GrayWalker {
  const Graph& g;
  std::vector<std::uint8_t> x;
  std::int64_t active = 0;
  std::int64_t nonmatches = 0;
  std::int64_t spin = 0;

  explicit GrayWalker(const Graph& graph)
      : g(graph), x(graph.n, 0) {}

  void flip(int i) {
    std::int64_t n1 = 0;
    for (int j : g.neighbors(i)) n1 += x[j];
    const int deg = g.degrees[i];
    if (x[i] == 0) {
      x[i] = 1;
      ++active;
      spin += n1;
      nonmatches += deg - 2 * n1;
    } else {
      x[i] = 0;
      --active;
      spin -= n1;
      nonmatches += 2 * n1 - deg;
    }
  }
};

}  // namespace

BruteForceResult brute_force(const Graph& g, double alpha, double beta) {
  if (g.n < 1 || g.n > 24)
    throw std::invalid_argument("brute_force limited to 1 <= n <= 24");
  if (beta < 0.0) throw std::domain_error("brute_force requires beta >= 0");

  const std::uint64_t n_states = 1ULL << g.n;

  // Pass 1: max exponent (state 0 has exponent 0).
  double max_e = 0.0;
  {
    GrayWalker w(g);
    for (std::uint64_t s = 1; s < n_states; ++s) {
      w.flip(std::countr_zero(s));
      const double e = alpha * w.active - beta * w.nonmatches;
      if (e > max_e) max_e = e;
    }
  }

  // Pass 2: shifted accumulation of Z and the moment numerators.
  long double zsum = 0.0L, asum = 0.0L, ssum = 0.0L, msum = 0.0L;
  {
    GrayWalker w(g);
    {
      const long double w0 = std::exp(-max_e);
      zsum += w0;
      msum += w0 * g.m;  // all-zero state: every edge matches
    }
    for (std::uint64_t s = 1; s < n_states; ++s) {
      w.flip(std::countr_zero(s));
      const double e = alpha * w.active - beta * w.nonmatches;
      const long double wt = std::exp(e - max_e);
      zsum += wt;
      asum += wt * w.active;
      ssum += wt * w.spin;
      msum += wt * (g.m - w.nonmatches);
    }
  }

  BruteForceResult r;
  r.log_z = max_e + static_cast<double>(std::log(zsum));
  r.m_active = static_cast<double>(asum / zsum);
  r.s_spin = static_cast<double>(ssum / zsum);
  r.matches = static_cast<double>(msum / zsum);
  return r;
}

}  // namespace ising
