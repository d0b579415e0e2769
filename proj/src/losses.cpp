#include "dae/losses.hpp"

#include <algorithm>
#include <cmath>

#include "dae/error.hpp"

namespace dae {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
}

double clamp_probability(double r) {
  return std::clamp(r, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

/// BCE against a constant target, for the adversarial terms.
LossValue bce_constant_target(double target, const Tensor& scores) {
  for (double s : scores.data()) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("adversarial_losses: score outside (0, 1)");
  }
  return bce_loss(Tensor(scores.shape(), target), scores);
}

}  // namespace

LossValue mse_loss(const Tensor& target, const Tensor& reconstruction) {
  require_same_shape(target, reconstruction, "mse_loss");
  const double n = static_cast<double>(target.size());
  LossValue out{0.0, Tensor(target.shape())};
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double d = reconstruction[i] - target[i];
    out.value += d * d;
    out.grad[i] = 2.0 * d / n;
  }
  out.value /= n;
  return out;
}

LossValue bce_loss(const Tensor& target, const Tensor& reconstruction) {
  require_same_shape(target, reconstruction, "bce_loss");
  const double n = static_cast<double>(target.size());
  LossValue out{0.0, Tensor(target.shape())};
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double x = target[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("bce_loss: target " + std::to_string(x) + " at index " +
                        std::to_string(i) + " outside [0, 1]");
    }
    const double r = clamp_probability(reconstruction[i]);
    out.value -= x * std::log(r) + (1.0 - x) * std::log(1.0 - r);
    out.grad[i] = -(x / r - (1.0 - x) / (1.0 - r)) / n;
  }
  out.value /= n;
  return out;
}

LossValue reconstruction_loss(LossKind kind, const Tensor& target, const Tensor& reconstruction) {
  return kind == LossKind::bce ? bce_loss(target, reconstruction)
                               : mse_loss(target, reconstruction);
}

KlValue kl_to_standard_normal(const Tensor& mu, const Tensor& logvar) {
  require_same_shape(mu, logvar, "kl_to_standard_normal");
  if (mu.rank() != 2) throw ShapeError("kl_to_standard_normal: expected [batch x latent]");
  const double batch = static_cast<double>(mu.rows());
  KlValue out{0.0, Tensor(mu.shape()), Tensor(mu.shape())};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double var = std::exp(logvar[i]);
    out.value += 0.5 * (var + mu[i] * mu[i] - 1.0 - logvar[i]);
    out.grad_mu[i] = mu[i] / batch;
    out.grad_logvar[i] = 0.5 * (var - 1.0) / batch;
  }
  out.value /= batch;
  return out;
}

AdversarialValue adversarial_losses(const Tensor& scores_on_prior,
                                    const Tensor& scores_on_encoded) {
  const LossValue real = bce_constant_target(1.0, scores_on_prior);
  const LossValue fake = bce_constant_target(0.0, scores_on_encoded);
  const LossValue fool = bce_constant_target(1.0, scores_on_encoded);
  return {real.value + fake.value, fool.value, real.grad, fake.grad, fool.grad};
}

}  // namespace dae
