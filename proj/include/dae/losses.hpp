#pragma once

#include "dae/tensor.hpp"

namespace dae {

enum class LossKind { bce, mse };

/// Lower/upper clamp applied to probabilities before taking logs.
inline constexpr double kProbabilityClamp = 1e-7;

/// Mean loss over all elements and its gradient with respect to the reconstruction.
struct LossValue {
  double value = 0.0;
  Tensor grad;
};

LossValue mse_loss(const Tensor& target, const Tensor& reconstruction);

/// Mean of -[x log r + (1-x) log(1-r)]. Targets must lie in [0, 1]; the reconstruction is
/// clamped to [1e-7, 1 - 1e-7]. The gradient is -(x/r - (1-x)/(1-r)) / N at the clamped r.
LossValue bce_loss(const Tensor& target, const Tensor& reconstruction);

LossValue reconstruction_loss(LossKind kind, const Tensor& target, const Tensor& reconstruction);

struct KlValue {
  double value = 0.0;
  Tensor grad_mu;
  Tensor grad_logvar;
};

/// KL(N(mu, exp(logvar)) || N(0, I)) summed over latent dims and averaged over the batch.
KlValue kl_to_standard_normal(const Tensor& mu, const Tensor& logvar);

struct AdversarialValue {
  double disc_loss = 0.0;  // BCE(1, prior scores) + BCE(0, encoded scores)
  double enc_loss = 0.0;   // BCE(1, encoded scores), the non-saturating encoder objective
  Tensor disc_grad_prior;
  Tensor disc_grad_encoded;
  Tensor enc_grad_encoded;
};

/// Scores are post-sigmoid discriminator outputs. Anything outside [0, 1] (or NaN) is a
/// DomainError; values at the boundary are clamped like BCE reconstructions.
AdversarialValue adversarial_losses(const Tensor& scores_on_prior, const Tensor& scores_on_encoded);

}  // namespace dae
