#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dae/adam.hpp"
#include "dae/losses.hpp"
#include "dae/model.hpp"

namespace dae {

struct TrainConfig {
  LossKind loss = LossKind::bce;
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  double regularizer_weight = 1.0;
  AdamConfig adam;

  void validate() const;
};

/// Optimizer moments for every update phase of a model.
struct OptimizerStates {
  AdamState autoencoder;              // encoder + decoder on the denoising loss
  AdamState discriminator;            // daae only
  AdamState encoder_adversarial;      // daae only: encoder on the fooling loss

  static OptimizerStates for_model(const Autoencoder& model, const AdamConfig& adam);
};

/// Per-step losses; terms that do not apply to the model kind stay 0.
struct StepLosses {
  double reconstruction = 0.0;
  double kl = 0.0;
  double disc = 0.0;
  double enc = 0.0;
};

/// Corrupt, reconstruct, take the denoising loss against the clean batch, one Adam update.
StepLosses dae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                          Prng& rng, OptimizerStates& opt);

/// Reparameterized latent z = mu + exp(logvar / 2) * eta; loss = recon + weight * KL.
StepLosses dvae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                           Prng& rng, OptimizerStates& opt);

/// Three updates in fixed order: autoencoder on the denoising loss, discriminator on prior
/// draws vs encodings, encoder on the non-saturating fooling loss.
StepLosses daae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                           Prng& rng, OptimizerStates& opt);

StepLosses train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg, Prng& rng,
                      OptimizerStates& opt);

/// Batch-averaged losses of one epoch.
using EpochStats = StepLosses;

struct TrainResult {
  Autoencoder model;
  std::vector<EpochStats> trace;
  OptimizerStates optimizer;  // final moments and step counts
};

/// Seeded Fisher–Yates shuffled minibatch epochs. The last batch may be short.
TrainResult train(Autoencoder model, const Tensor& dataset, const TrainConfig& cfg);

/// Builds the default model for `kind` from `cfg.seed`, then trains it.
TrainResult train(ModelKind kind, const Tensor& dataset, const TrainConfig& cfg,
                  const Architecture& arch, CorruptionSpec corruption);

}  // namespace dae
