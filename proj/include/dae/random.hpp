#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "dae/tensor.hpp"

namespace dae {

/// Seeded pseudo-random source. The engine is mt19937_64, whose output sequence is
/// fixed by the C++ standard; uniform and normal variates are derived here rather than
/// through <random> distributions, whose algorithms vary between standard libraries.
/// Single owner: do not share one instance across threads.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, n), rejection sampled (unbiased). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box–Muller; the second value of each pair is cached.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// I.i.d. N(0, sigma^2) draws; sigma = 0 gives zeros without consuming randomness.
Tensor sample_gaussian(Prng& rng, const Shape& shape, double sigma);
/// I.i.d. U(lo, hi) draws.
Tensor sample_uniform(Prng& rng, const Shape& shape, double lo, double hi);

}  // namespace dae
