#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dae/mixture.hpp"
#include "dae/quadrature.hpp"

namespace dae {

/// Optimal denoising reconstruction for a known density,
///   R*(x) = E_eps[p(x - eps)(x - eps)] / E_eps[p(x - eps)],  eps ~ N(0, sigma^2 I),
/// with both expectations taken over the same rule and accumulated in the log domain.
/// The rule is built once; evaluation is const and thread-safe.
class OptimalReconstruction {
 public:
  OptimalReconstruction(GaussianMixture gm, double sigma, const QuadratureSpec& quad);

  /// Throws UnderflowError when E[p(x - eps)] < 1e-300.
  Point operator()(std::span<const double> x) const;

  double sigma() const { return sigma_; }

 private:
  GaussianMixture gm_;
  double sigma_;
  GaussianExpectationRule rule_;
};

Point optimal_reconstruction(const GaussianMixture& gm, double sigma, std::span<const double> x,
                             const QuadratureSpec& quad);

/// (R(x) - x) / sigma^2.
Point score_from_reconstruction(std::span<const double> reconstruction,
                                std::span<const double> x, double sigma);

struct ConvergenceRow {
  double sigma = 0.0;
  double max_relative_error = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;  // in the order of the input sigmas
  bool non_increasing = true;        // errors never grow as sigma shrinks
};

/// Relative score error ||s_hat - s|| / ||s|| maximized over grid points, where s_hat comes from
/// the optimal reconstruction and s is the analytic score. Points whose analytic score norm is
/// below 1e-9 of the grid maximum are skipped (relative error undefined there).
/// Grid points must lie in the high-density region (log p >= max log p - 4).
ConvergenceStudy limit_convergence_study(const GaussianMixture& gm,
                                         const std::vector<double>& sigmas,
                                         const std::vector<Point>& grid,
                                         const QuadratureSpec& quad);

struct ScoreAgreement {
  double sign_agreement = 0.0;  // fraction of coordinates with matching sign
  double pearson = 0.0;         // correlation over all coordinates
  std::size_t count = 0;
};

/// Compares estimated and analytic scores point by point (same order, same dims).
ScoreAgreement compare_scores(const std::vector<Point>& estimated,
                              const std::vector<Point>& analytic);

}  // namespace dae
