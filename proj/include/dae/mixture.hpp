#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dae {

using Point = std::vector<double>;

/// Gaussian mixture with diagonal covariances.
struct GaussianMixture {
  std::size_t dim = 1;
  std::vector<double> weights;
  std::vector<Point> means;      // one point per component
  std::vector<Point> variances;  // per component, per dimension

  std::size_t components() const { return weights.size(); }

  /// Weights positive and summing to 1 within 1e-12, variances positive, sizes consistent.
  void validate() const;
  /// Means inside (0,1)^dim and mean +/- 4 sd inside (0,1) on every coordinate.
  void validate_unit_cube() const;

  /// Isotropic single component.
  static GaussianMixture single(Point mean, double variance);
  /// Equal-weight components sharing one isotropic variance.
  static GaussianMixture equal_weights(std::vector<Point> means, double variance);
};

/// log sum_k w_k N(x; mu_k, diag(s_k^2)) via log-sum-exp.
double mixture_log_pdf(const GaussianMixture& gm, std::span<const double> x);
/// Posterior component probabilities at x.
std::vector<double> responsibilities(const GaussianMixture& gm, std::span<const double> x);
/// d log p / dx = sum_k r_k(x) (mu_k - x) / s_k^2.
Point analytic_score(const GaussianMixture& gm, std::span<const double> x);
/// Index of the most responsible component (mode membership).
std::size_t dominant_component(const GaussianMixture& gm, std::span<const double> x);

/// Regular grid over the box spanning +/- 8 sd around every mean, keeping only points whose
/// log density is within `nats` of the largest log density seen (grid points and means).
std::vector<Point> high_density_grid(const GaussianMixture& gm, std::size_t points_per_dim,
                                     double nats = 4.0);

}  // namespace dae
