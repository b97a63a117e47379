#pragma once

#include <cstdint>

namespace ising {

// Keyed pseudo-random stream: state is derived from (seed, stream, substream)
// through splitmix64, so independent chains / path-sampling knots get
// reproducible, non-overlapping streams without shared global state.
// Generator core is xoshiro256++.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                     std::uint64_t substream = 0);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double next_double();
  // Uniform on (0, 1); never returns an endpoint.
  double next_open();

  // Standard normal via Box-Muller (two uniforms per draw, no cache).
  double next_normal();

  // Gamma(shape, rate) via Marsaglia-Tsang, boosted for shape < 1.
  double next_gamma(double shape, double rate);

  // Bernoulli with P(true) = logistic(logit).
  bool next_bernoulli_logit(double logit);

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t s_[4];
};

}  // namespace ising
