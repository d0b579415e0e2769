#include "dae/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dae/error.hpp"

namespace dae {

namespace {

const double kLogUnderflow = std::log(1e-300);

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

OptimalReconstruction::OptimalReconstruction(GaussianMixture gm, double sigma,
                                             const QuadratureSpec& quad)
    : gm_(std::move(gm)), sigma_(sigma) {
  gm_.validate();
  if (!(sigma > 0.0)) throw ArgumentError("optimal_reconstruction: sigma must be positive");
  rule_ = make_gaussian_rule(gm_.dim, sigma, quad);
}

Point OptimalReconstruction::operator()(std::span<const double> x) const {
  if (x.size() != gm_.dim) throw ShapeError("optimal_reconstruction: point has the wrong dim");
  const std::size_t dim = gm_.dim;
  const std::size_t n = rule_.points();

  std::vector<double> log_terms(n);
  Point shifted(dim);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) shifted[j] = x[j] - rule_.offsets[i * dim + j];
    log_terms[i] = rule_.log_weights[i] + mixture_log_pdf(gm_, shifted);
    peak = std::max(peak, log_terms[i]);
  }

  double denominator = 0.0;
  Point shift(dim, 0.0);  // accumulates -eps so R - x is formed without cancellation
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::exp(log_terms[i] - peak);
    denominator += a;
    for (std::size_t j = 0; j < dim; ++j) shift[j] -= a * rule_.offsets[i * dim + j];
  }
  if (!(peak + std::log(denominator) >= kLogUnderflow)) {
    throw UnderflowError("optimal_reconstruction: E[p(x - eps)] underflows; x is too far from "
                         "the density mass");
  }
  Point r(dim);
  for (std::size_t j = 0; j < dim; ++j) r[j] = x[j] + shift[j] / denominator;
  return r;
}

Point optimal_reconstruction(const GaussianMixture& gm, double sigma, std::span<const double> x,
                             const QuadratureSpec& quad) {
  return OptimalReconstruction(gm, sigma, quad)(x);
}

Point score_from_reconstruction(std::span<const double> reconstruction,
                                std::span<const double> x, double sigma) {
  if (!(sigma > 0.0)) throw ArgumentError("score_from_reconstruction: sigma must be positive");
  if (reconstruction.size() != x.size()) throw ShapeError("score_from_reconstruction: dims differ");
  const double inv_var = 1.0 / (sigma * sigma);
  Point s(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) s[j] = (reconstruction[j] - x[j]) * inv_var;
  return s;
}

ConvergenceStudy limit_convergence_study(const GaussianMixture& gm,
                                         const std::vector<double>& sigmas,
                                         const std::vector<Point>& grid,
                                         const QuadratureSpec& quad) {
  gm.validate();
  if (sigmas.empty()) throw ArgumentError("limit_convergence_study: no sigmas");
  if (grid.empty()) throw ArgumentError("limit_convergence_study: empty grid");

  double best = -std::numeric_limits<double>::infinity();
  for (const Point& m : gm.means) best = std::max(best, mixture_log_pdf(gm, m));
  std::vector<Point> truth;
  double largest = 0.0;
  for (const Point& p : grid) {
    const double lp = mixture_log_pdf(gm, p);
    best = std::max(best, lp);
    truth.push_back(analytic_score(gm, p));
    largest = std::max(largest, norm(truth.back()));
  }
  for (const Point& p : grid) {
    if (mixture_log_pdf(gm, p) < best - 4.0) {
      throw ArgumentError("limit_convergence_study: grid point outside the high-density region");
    }
  }

  ConvergenceStudy study;
  for (double sigma : sigmas) {
    const OptimalReconstruction optimal(gm, sigma, quad);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double reference = norm(truth[i]);
      if (reference <= 1e-9 * largest) continue;
      const Point estimate = score_from_reconstruction(optimal(grid[i]), grid[i], sigma);
      Point diff(estimate.size());
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = estimate[j] - truth[i][j];
      worst = std::max(worst, norm(diff) / reference);
    }
    study.rows.push_back({sigma, worst});
  }
  // Compare in order of decreasing sigma regardless of the input order.
  std::vector<ConvergenceRow> sorted = study.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.sigma > b.sigma; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].max_relative_error > sorted[i - 1].max_relative_error * (1.0 + 1e-9) + 1e-12) {
      study.non_increasing = false;
    }
  }
  return study;
}

ScoreAgreement compare_scores(const std::vector<Point>& estimated,
                              const std::vector<Point>& analytic) {
  if (estimated.size() != analytic.size()) throw ShapeError("compare_scores: sizes differ");
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    if (estimated[i].size() != analytic[i].size()) throw ShapeError("compare_scores: dims differ");
    a.insert(a.end(), estimated[i].begin(), estimated[i].end());
    b.insert(b.end(), analytic[i].begin(), analytic[i].end());
  }
  ScoreAgreement out;
  out.count = a.size();
  if (a.empty()) return out;
  const double n = static_cast<double>(a.size());
  std::size_t matches = 0;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    if (sign(a[i]) == sign(b[i])) ++matches;
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - mean_a) * (b[i] - mean_b);
    var_a += (a[i] - mean_a) * (a[i] - mean_a);
    var_b += (b[i] - mean_b) * (b[i] - mean_b);
  }
  out.sign_agreement = static_cast<double>(matches) / n;
  out.pearson = var_a > 0.0 && var_b > 0.0 ? cov / std::sqrt(var_a * var_b) : 0.0;
  return out;
}

}  // namespace dae
