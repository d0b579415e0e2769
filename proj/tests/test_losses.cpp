#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dae/error.hpp"
#include "dae/losses.hpp"
#include "dae/random.hpp"
#include "support/finite_difference.hpp"
#include "support/gradient_checks.hpp"

using namespace dae;
using dae::testing::central_gradient;
using dae::testing::max_relative_error;

namespace {

Tensor filled(std::vector<std::size_t> shape, double v) {
  Tensor t(std::move(shape));
  for (double& x : t.data()) x = v;
  return t;
}

double grid_argmin(LossKind kind, double x) {
  double best_r = 0.0;
  double best = INFINITY;
  for (int k = 1; k < 1000; ++k) {
    const double r = k * 1e-3;
    const double v = reconstruction_loss(kind, filled({1, 1}, x), filled({1, 1}, r)).value;
    if (v < best) {
      best = v;
      best_r = r;
    }
  }
  return best_r;
}

}  // namespace

TEST_CASE("mse: identical tensors give zero value and gradient") {
  Prng rng(3);
  const Tensor x = sample_uniform(rng, {4, 5}, 0.0, 1.0);
  const auto l = mse_loss(x, x);
  CHECK(l.value == 0.0);
  for (double g : l.grad.data()) CHECK(g == 0.0);
}

TEST_CASE("mse: zeros against ones is one") {
  CHECK(mse_loss(filled({3, 2}, 0.0), filled({3, 2}, 1.0)).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mse: gradient matches finite differences on random pairs") {
  Prng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor x = sample_uniform(rng, {3, 4}, 0.0, 1.0);
    Tensor r = sample_uniform(rng, {3, 4}, 0.0, 1.0);
    const auto analytic = mse_loss(x, r).grad;
    const auto fd = central_gradient([&] { return mse_loss(x, r).value; }, r.data(), 1e-4);
    CHECK(max_relative_error(fd, analytic.data(), 1e-12) <= 1e-8);
  }
}

TEST_CASE("mse: shape mismatch") {
  CHECK_THROWS_AS(mse_loss(Tensor({2, 3}), Tensor({3, 2})), ShapeError);
}

TEST_CASE("bce: symmetric case is ln 2") {
  CHECK(bce_loss(filled({2, 3}, 0.5), filled({2, 3}, 0.5)).value ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("bce: gradient vanishes at r = x") {
  Prng rng(5);
  const Tensor x = sample_uniform(rng, {8, 8}, 1e-3, 1.0 - 1e-3);
  const auto l = bce_loss(x, x);
  for (double g : l.grad.data()) CHECK(std::abs(g) <= 1e-15);
}

TEST_CASE("bce: single element x = 1, r = 0.9") {
  const auto l = bce_loss(filled({1, 1}, 1.0), filled({1, 1}, 0.9));
  CHECK(l.value == doctest::Approx(-std::log(0.9)).epsilon(1e-14));
  CHECK(l.value == doctest::Approx(0.105361).epsilon(1e-5));
  CHECK(l.grad[0] == doctest::Approx(-1.0 / 0.9).epsilon(1e-14));
}

TEST_CASE("bce: gradient equals the direct formula at 1000 pairs") {
  Prng rng(17);
  const Tensor x = sample_uniform(rng, {1000, 1}, 0.0, 1.0);
  const Tensor r = sample_uniform(rng, {1000, 1}, 1e-3, 1.0 - 1e-3);
  const auto l = bce_loss(x, r);
  for (std::size_t i = 0; i < 1000; ++i) {
    const double direct = -(x[i] / r[i] - (1.0 - x[i]) / (1.0 - r[i])) / 1000.0;
    CHECK(std::abs(l.grad[i] - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("bce: clamped reconstruction keeps value and gradient finite") {
  const auto l = bce_loss(Tensor::from_rows({{1.0, 0.0}}), Tensor::from_rows({{0.0, 1.0}}));
  CHECK(std::isfinite(l.value));
  CHECK(l.value == doctest::Approx(-std::log(kProbabilityClamp)).epsilon(1e-9));
  CHECK(l.grad.all_finite());
}

TEST_CASE("bce: value is non-negative for targets in [0,1]") {
  Prng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor x = sample_uniform(rng, {2, 3}, 0.0, 1.0);
    const Tensor r = sample_uniform(rng, {2, 3}, 0.0, 1.0);
    CHECK(bce_loss(x, r).value >= 0.0);
  }
}

TEST_CASE("bce: targets outside [0,1] are a domain error") {
  CHECK_THROWS_AS(bce_loss(filled({1, 1}, 1.5), filled({1, 1}, 0.5)), DomainError);
  CHECK_THROWS_AS(bce_loss(filled({1, 1}, -0.1), filled({1, 1}, 0.5)), DomainError);
  CHECK_THROWS_AS(bce_loss(Tensor({2, 2}), Tensor({2, 3})), ShapeError);
}

TEST_CASE("bce and mse: grid-scan minimizer is r = x") {
  for (double x : {0.05, 0.2, 0.37, 0.5, 0.81, 0.95}) {
    CAPTURE(x);
    const double bce_min = grid_argmin(LossKind::bce, x);
    const double mse_min = grid_argmin(LossKind::mse, x);
    CHECK(std::abs(bce_min - x) <= 1e-3);
    CHECK(std::abs(mse_min - x) <= 1e-3);
    CHECK(std::abs(bce_min - mse_min) <= 1e-3);
  }
}

TEST_CASE("kl: prior equals posterior") {
  const auto k = kl_to_standard_normal(Tensor({4, 3}), Tensor({4, 3}));
  CHECK(k.value == 0.0);
}

TEST_CASE("kl: unit mean offset in one dimension") {
  const auto k = kl_to_standard_normal(filled({1, 1}, 1.0), filled({1, 1}, 0.0));
  CHECK(k.value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("kl: gradient check") {
  Prng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor mu = sample_gaussian(rng, {3, 2}, 1.0);
    Tensor logvar = sample_gaussian(rng, {3, 2}, 1.0);
    const auto k = kl_to_standard_normal(mu, logvar);
    const auto f = [&] { return kl_to_standard_normal(mu, logvar).value; };
    CHECK(max_relative_error(central_gradient(f, mu.data(), 1e-5), k.grad_mu.data()) <= 1e-6);
    CHECK(max_relative_error(central_gradient(f, logvar.data(), 1e-5), k.grad_logvar.data()) <= 1e-6);
    CHECK(k.value >= 0.0);
  }
}

TEST_CASE("adversarial: indifferent discriminator") {
  const auto a = adversarial_losses(filled({5, 1}, 0.5), filled({5, 1}, 0.5));
  CHECK(a.disc_loss == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-14));
  CHECK(a.enc_loss == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("adversarial: perfect discriminator") {
  const double d = 1e-7;
  const auto a = adversarial_losses(filled({5, 1}, 1.0 - d), filled({5, 1}, d));
  CHECK(a.disc_loss <= 1e-6);
  CHECK(a.disc_loss >= 0.0);
}

TEST_CASE("adversarial: encoder gradient pushes encoded scores upward") {
  Prng rng(31);
  const auto a = adversarial_losses(sample_uniform(rng, {6, 1}, 0.05, 0.95),
                                    sample_uniform(rng, {6, 1}, 0.05, 0.95));
  for (double g : a.enc_grad_encoded.data()) CHECK(g < 0.0);
  for (double g : a.disc_grad_prior.data()) CHECK(g < 0.0);
  for (double g : a.disc_grad_encoded.data()) CHECK(g > 0.0);
}

TEST_CASE("adversarial: scores outside [0,1] are a domain error") {
  CHECK_THROWS_AS(adversarial_losses(filled({1, 1}, 1.2), filled({1, 1}, 0.5)), DomainError);
  CHECK_THROWS_AS(adversarial_losses(filled({1, 1}, 0.5), filled({1, 1}, -0.2)), DomainError);
}

TEST_CASE("every loss composed with a random MLP passes finite-difference checks") {
  using dae::testing::CheckedLoss;
  for (auto kind : {CheckedLoss::mse, CheckedLoss::bce, CheckedLoss::kl,
                    CheckedLoss::adversarial_disc, CheckedLoss::adversarial_enc}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CAPTURE(static_cast<int>(kind));
      CAPTURE(seed);
      CHECK(dae::testing::gradient_check(kind, 500 + seed) <= 1e-5);
    }
  }
}
