#include "dae/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dae/error.hpp"

namespace dae {

namespace {

void require_dim(const GaussianMixture& gm, std::span<const double> x) {
  if (x.size() != gm.dim) {
    throw ShapeError("mixture of dim " + std::to_string(gm.dim) + " evaluated at a point of dim " +
                     std::to_string(x.size()));
  }
}

/// log w_k + log N(x; mu_k, diag s_k^2) for each component.
std::vector<double> joint_log_terms(const GaussianMixture& gm, std::span<const double> x) {
  require_dim(gm, x);
  static const double log_two_pi = std::log(2.0 * std::numbers::pi);
  std::vector<double> terms(gm.components());
  for (std::size_t k = 0; k < gm.components(); ++k) {
    double acc = std::log(gm.weights[k]);
    for (std::size_t j = 0; j < gm.dim; ++j) {
      const double var = gm.variances[k][j];
      const double d = x[j] - gm.means[k][j];
      acc -= 0.5 * (log_two_pi + std::log(var) + d * d / var);
    }
    terms[k] = acc;
  }
  return terms;
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : v) s += std::exp(t - m);
  return m + std::log(s);
}

}  // namespace

void GaussianMixture::validate() const {
  if (dim == 0) throw ArgumentError("mixture dim must be positive");
  if (weights.empty()) throw ArgumentError("mixture needs at least one component");
  if (means.size() != weights.size() || variances.size() != weights.size()) {
    throw ArgumentError("mixture weights, means and variances must have one entry per component");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] > 0.0)) throw ArgumentError("mixture weights must be positive");
    total += weights[k];
    if (means[k].size() != dim || variances[k].size() != dim) {
      throw ArgumentError("mixture component " + std::to_string(k) + " has the wrong dimension");
    }
    for (double v : variances[k]) {
      if (!(v > 0.0)) throw ArgumentError("mixture variances must be positive");
    }
  }
  if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("mixture weights must sum to 1");
}

void GaussianMixture::validate_unit_cube() const {
  validate();
  for (std::size_t k = 0; k < components(); ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double reach = 4.0 * std::sqrt(variances[k][j]);
      const double m = means[k][j];
      if (!(m - reach > 0.0 && m + reach < 1.0)) {
        throw ArgumentError("mixture component " + std::to_string(k) +
                            " puts mass outside (0, 1): mean +/- 4 sd leaves the unit cube");
      }
    }
  }
}

GaussianMixture GaussianMixture::single(Point mean, double variance) {
  GaussianMixture gm;
  gm.dim = mean.size();
  gm.weights = {1.0};
  gm.variances = {Point(gm.dim, variance)};
  gm.means = {std::move(mean)};
  return gm;
}

GaussianMixture GaussianMixture::equal_weights(std::vector<Point> means, double variance) {
  GaussianMixture gm;
  gm.dim = means.front().size();
  gm.weights.assign(means.size(), 1.0 / static_cast<double>(means.size()));
  gm.variances.assign(means.size(), Point(gm.dim, variance));
  gm.means = std::move(means);
  return gm;
}

double mixture_log_pdf(const GaussianMixture& gm, std::span<const double> x) {
  return log_sum_exp(joint_log_terms(gm, x));
}

std::vector<double> responsibilities(const GaussianMixture& gm, std::span<const double> x) {
  std::vector<double> terms = joint_log_terms(gm, x);
  const double total = log_sum_exp(terms);
  for (double& t : terms) t = std::exp(t - total);
  return terms;
}

Point analytic_score(const GaussianMixture& gm, std::span<const double> x) {
  const std::vector<double> r = responsibilities(gm, x);
  Point score(gm.dim, 0.0);
  for (std::size_t k = 0; k < gm.components(); ++k) {
    for (std::size_t j = 0; j < gm.dim; ++j) {
      score[j] += r[k] * (gm.means[k][j] - x[j]) / gm.variances[k][j];
    }
  }
  return score;
}

std::size_t dominant_component(const GaussianMixture& gm, std::span<const double> x) {
  const std::vector<double> terms = joint_log_terms(gm, x);
  return static_cast<std::size_t>(std::max_element(terms.begin(), terms.end()) - terms.begin());
}

std::vector<Point> high_density_grid(const GaussianMixture& gm, std::size_t points_per_dim,
                                     double nats) {
  gm.validate();
  if (points_per_dim < 2) throw ArgumentError("high_density_grid: need >= 2 points per dim");
  Point lo(gm.dim, std::numeric_limits<double>::infinity());
  Point hi(gm.dim, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < gm.components(); ++k) {
    for (std::size_t j = 0; j < gm.dim; ++j) {
      const double reach = 8.0 * std::sqrt(gm.variances[k][j]);
      lo[j] = std::min(lo[j], gm.means[k][j] - reach);
      hi[j] = std::max(hi[j], gm.means[k][j] + reach);
    }
  }

  std::vector<Point> all;
  std::vector<double> log_density;
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& m : gm.means) best = std::max(best, mixture_log_pdf(gm, m));

  std::vector<std::size_t> index(gm.dim, 0);
  while (true) {
    Point p(gm.dim);
    for (std::size_t j = 0; j < gm.dim; ++j) {
      p[j] = lo[j] + (hi[j] - lo[j]) * static_cast<double>(index[j]) /
                         static_cast<double>(points_per_dim - 1);
    }
    const double lp = mixture_log_pdf(gm, p);
    best = std::max(best, lp);
    all.push_back(std::move(p));
    log_density.push_back(lp);
    // Odometer increment, last coordinate fastest.
    std::size_t j = gm.dim;
    while (j > 0 && ++index[j - 1] == points_per_dim) index[--j] = 0;
    if (j == 0) break;
  }

  std::vector<Point> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (log_density[i] >= best - nats) kept.push_back(std::move(all[i]));
  }
  return kept;
}

}  // namespace dae
