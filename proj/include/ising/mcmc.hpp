#pragma once

#include <cstdint>
#include <vector>

#include "ising/graph.hpp"
#include "ising/partition.hpp"
#include "ising/rng.hpp"

namespace ising {

using State = std::vector<std::uint8_t>;

struct MCMCConfig {
  long burn_in = 10000;
  long samples = 10000;
  int thin = 1;
  std::uint64_t seed = 0;
  enum class Updater { swendsen_wang, single_site };
  Updater updater = Updater::swendsen_wang;

  void validate() const;
};

struct ChainResult {
  double mean_active = 0, mean_spin = 0, mean_matches = 0;
  double se_active = 0, se_spin = 0, se_matches = 0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// One Swendsen-Wang cluster update: bond equal-label neighbors with
// probability 1 - e^{-beta}, then relabel each component C to 1 with
// probability e^{alpha |C|} / (1 + e^{alpha |C|}). Stationary law is the
// homogeneous model with external field alpha.
void sw_step(const Graph& g, State& x, const IsingParams& p, RngStream& rng);

// Raster-order single-site Gibbs sweep.
void gibbs_sweep(const Graph& g, State& x, const IsingParams& p,
                 RngStream& rng);

// Conditional logit of site i given its neighbors:
//   alpha - beta*deg(i) + 2*beta*(active neighbors).
double gibbs_conditional_logit(const Graph& g, const State& x, int i,
                               const IsingParams& p);

// Full chain with deterministic keyed stream (seed, chain_id): initial state
// is iid Bernoulli(logistic(alpha)), then burn-in, then `samples` retained
// states every `thin` sweeps. Standard errors by batch means with
// ceil(sqrt(samples)) batches.
ChainResult run_chain(const Graph& g, const IsingParams& p,
                      const MCMCConfig& cfg, std::uint64_t chain_id = 0);

// Same, but continues from the supplied state with the supplied stream.
ChainResult run_chain_from(const Graph& g, const IsingParams& p,
                           const MCMCConfig& cfg, State& x, RngStream& rng);

// Thermodynamic-integration estimate
//   log Z = int_0^beta E_b[matches] db + n log(1 + e^alpha) - m*beta
// over uniform knots b_0 = 0 < ... < b_K = beta (trapezoid rule). The b = 0
// endpoint uses the closed form m(p^2 + (1-p)^2), p = logistic(alpha); each
// interior knot runs one chain keyed by its knot index. `warm_start` carries
// the previous knot's final state forward.
struct PathSampleResult {
  LogZEstimate log_z;
  ChainResult final_knot;  // chain at b_K = beta; reusable as an M/S reference
};

PathSampleResult path_sample_detail(const Graph& g, double alpha, double beta,
                                    int knots, const MCMCConfig& cfg,
                                    bool warm_start = true);

LogZEstimate path_sample_log_z(const Graph& g, double alpha, double beta,
                               int knots, const MCMCConfig& cfg,
                               bool warm_start = true);

}  // namespace ising
