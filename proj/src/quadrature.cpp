#include "dae/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dae/error.hpp"
#include "dae/random.hpp"

namespace dae {

namespace {

// Number of eigenvalues below `lambda` of the symmetric tridiagonal Jacobi matrix of the
// Hermite weight (zero diagonal, off-diagonal sqrt(k / 2)), by Sturm sequence.
std::size_t eigenvalues_below(std::size_t n, double lambda) {
  std::size_t count = 0;
  double q = -lambda;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) q = -lambda - (static_cast<double>(k) / 2.0) / q;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

GaussHermiteRule gauss_hermite(std::size_t n) {
  if (n == 0) throw ArgumentError("gauss_hermite: need at least one node");
  constexpr double kTolerance = 3e-14;
  constexpr int kMaxIterations = 100;
  const double pi_m4 = std::pow(std::numbers::pi, -0.25);
  const double nd = static_cast<double>(n);
  const double bound = 2.0 * std::sqrt(std::max(nd - 1.0, 1.0) / 2.0) + 1.0;

  GaussHermiteRule rule{std::vector<double>(n), std::vector<double>(n)};
  auto& x = rule.nodes;
  auto& w = rule.weights;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Bracket the i-th largest root by bisection, then polish with Newton.
    const std::size_t rank = n - 1 - i;
    double lo = -bound;
    double hi = bound;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (eigenvalues_below(n, mid) > rank) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    double z = 0.5 * (lo + hi);
    double derivative = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
      double p1 = pi_m4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
      }
      derivative = std::sqrt(2.0 * nd) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= kTolerance * std::max(1.0, std::abs(z))) break;
      if (it + 1 == kMaxIterations) throw NumericError("gauss_hermite: Newton did not converge");
    }
    if (n % 2 == 1 && i == n / 2) z = 0.0;
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (derivative * derivative);
    w[n - 1 - i] = w[i];
  }
  return rule;
}

void QuadratureSpec::validate() const {
  if (method == QuadratureMethod::gauss_hermite && nodes_per_dim < 8) {
    throw ArgumentError("Gauss–Hermite quadrature needs at least 8 nodes per dim");
  }
  if (method == QuadratureMethod::monte_carlo && n_samples < 10000) {
    throw ArgumentError("Monte Carlo quadrature needs at least 1e4 samples");
  }
}

GaussianExpectationRule make_gaussian_rule(std::size_t dim, double sigma,
                                           const QuadratureSpec& spec) {
  spec.validate();
  if (dim == 0 || dim > 3) throw ArgumentError("quadrature supports dims 1 to 3");
  GaussianExpectationRule rule;
  rule.dim = dim;

  if (spec.method == QuadratureMethod::monte_carlo) {
    Prng rng(spec.mc_seed);
    const Tensor eps = sample_gaussian(rng, {spec.n_samples, dim}, sigma);
    rule.offsets = eps.values();
    rule.log_weights.assign(spec.n_samples, -std::log(static_cast<double>(spec.n_samples)));
    return rule;
  }

  const GaussHermiteRule gh = gauss_hermite(spec.nodes_per_dim);
  const std::size_t n = gh.nodes.size();
  const double log_sqrt_pi = 0.5 * std::log(std::numbers::pi);
  std::size_t total = 1;
  for (std::size_t j = 0; j < dim; ++j) total *= n;
  rule.offsets.resize(total * dim);
  rule.log_weights.resize(total);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    double lw = 0.0;
    for (std::size_t j = dim; j-- > 0;) {
      const std::size_t k = rest % n;
      rest /= n;
      rule.offsets[p * dim + j] = sigma * std::numbers::sqrt2 * gh.nodes[k];
      lw += std::log(gh.weights[k]) - log_sqrt_pi;
    }
    rule.log_weights[p] = lw;
  }
  return rule;
}

}  // namespace dae
