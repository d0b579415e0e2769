#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dae/mixture.hpp"

namespace dae {

/// Nodes and weights for integrals of exp(-t^2) f(t) over the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Hermite rule (Newton iteration on the orthonormal recurrence).
/// Exact for polynomials of degree <= 2n - 1.
GaussHermiteRule gauss_hermite(std::size_t n);

enum class QuadratureMethod { gauss_hermite, monte_carlo };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::gauss_hermite;
  std::size_t nodes_per_dim = 64;
  std::size_t n_samples = 100000;
  std::uint64_t mc_seed = 1;

  /// nodes_per_dim >= 8 (Gauss–Hermite) or n_samples >= 1e4 (Monte Carlo).
  void validate() const;
};

/// Discrete stand-in for eps ~ N(0, sigma^2 I) in `dim` dimensions: points and log-weights,
/// with weights summing to 1. Gauss–Hermite uses eps = sigma * sqrt(2) * node per coordinate on
/// the tensor-product grid.
struct GaussianExpectationRule {
  std::size_t dim = 0;
  std::vector<double> offsets;  // [points x dim], row-major
  std::vector<double> log_weights;

  std::size_t points() const { return log_weights.size(); }
};

GaussianExpectationRule make_gaussian_rule(std::size_t dim, double sigma,
                                           const QuadratureSpec& spec);

}  // namespace dae
