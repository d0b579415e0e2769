#include "dae/training.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "dae/error.hpp"

namespace dae {

namespace {

constexpr std::uint64_t kTrainingStreamOffset = 0x9E3779B97F4A7C15ULL;

template <typename T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw NumericError(std::string("training aborted: ") + what + " loss is not finite");
  }
}

void require_unit_interval(const Tensor& batch) {
  for (double v : batch.data()) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("training batch values must lie in [0, 1]");
  }
}

Tensor scaled(const Tensor& t, double s) { return s == 1.0 ? t : scale(t, s); }

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  if (!(regularizer_weight >= 0.0)) throw ArgumentError("regularizer_weight must be >= 0");
}

OptimizerStates OptimizerStates::for_model(const Autoencoder& model, const AdamConfig& adam) {
  OptimizerStates s;
  s.autoencoder = AdamState(
      concat(model.encoder.params.tensors(), model.decoder.params.tensors()),
      concat(model.encoder.params.names("encoder"), model.decoder.params.names("decoder")), adam);
  if (model.discriminator) {
    s.discriminator = AdamState(model.discriminator->params.tensors(),
                                model.discriminator->params.names("discriminator"), adam);
    s.encoder_adversarial =
        AdamState(model.encoder.params.tensors(), model.encoder.params.names("encoder"), adam);
  }
  return s;
}

StepLosses dae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                          Prng& rng, OptimizerStates& opt) {
  require_unit_interval(batch);
  const Tensor noisy = corrupt(batch, model.corruption, rng);
  const auto enc = mlp_forward(model.encoder, noisy, true);
  const auto dec = mlp_forward(model.decoder, enc.output, true);
  const LossValue loss = reconstruction_loss(cfg.loss, batch, dec.output);
  require_finite(loss.value, "reconstruction");

  const auto dec_back = mlp_backward(model.decoder, dec.cache, loss.grad);
  const auto enc_back = mlp_backward(model.encoder, enc.cache, dec_back.grad_input);
  adam_step(concat(model.encoder.params.tensors(), model.decoder.params.tensors()),
            concat(enc_back.grads.tensors(), dec_back.grads.tensors()), opt.autoencoder);
  return {loss.value, 0.0, 0.0, 0.0};
}

StepLosses dvae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                           Prng& rng, OptimizerStates& opt) {
  require_unit_interval(batch);
  const std::size_t latent = model.latent_dim();
  const Tensor noisy = corrupt(batch, model.corruption, rng);
  const auto enc = mlp_forward(model.encoder, noisy, true);
  const Tensor mu = slice_columns(enc.output, 0, latent);
  const Tensor logvar = slice_columns(enc.output, latent, 2 * latent);
  const Tensor eta = sample_gaussian(rng, mu.shape(), 1.0);

  Tensor stddev(logvar.shape());
  Tensor z(mu.shape());
  for (std::size_t i = 0; i < z.size(); ++i) {
    stddev[i] = std::exp(0.5 * logvar[i]);
    z[i] = mu[i] + stddev[i] * eta[i];
  }
  const auto dec = mlp_forward(model.decoder, z, true);
  const LossValue recon = reconstruction_loss(cfg.loss, batch, dec.output);
  const KlValue kl = kl_to_standard_normal(mu, logvar);
  require_finite(recon.value, "reconstruction");
  require_finite(kl.value, "KL");

  const auto dec_back = mlp_backward(model.decoder, dec.cache, recon.grad);
  const Tensor& dz = dec_back.grad_input;
  const double w = cfg.regularizer_weight;
  Tensor grad_mu(mu.shape());
  Tensor grad_logvar(logvar.shape());
  for (std::size_t i = 0; i < dz.size(); ++i) {
    grad_mu[i] = dz[i] + w * kl.grad_mu[i];
    grad_logvar[i] = dz[i] * eta[i] * 0.5 * stddev[i] + w * kl.grad_logvar[i];
  }
  const auto enc_back = mlp_backward(model.encoder, enc.cache, concat_columns(grad_mu, grad_logvar));
  adam_step(concat(model.encoder.params.tensors(), model.decoder.params.tensors()),
            concat(enc_back.grads.tensors(), dec_back.grads.tensors()), opt.autoencoder);
  return {recon.value, kl.value, 0.0, 0.0};
}

StepLosses daae_train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg,
                           Prng& rng, OptimizerStates& opt) {
  if (!model.discriminator) throw ArgumentError("daae_train_step: model has no discriminator");
  require_unit_interval(batch);
  Mlp& disc = *model.discriminator;
  const double dropout = model.discriminator_dropout;

  // Phase 1: denoising autoencoder update.
  const Tensor noisy = corrupt(batch, model.corruption, rng);
  double recon_value = 0.0;
  {
    const auto enc = mlp_forward(model.encoder, noisy, true);
    const auto dec = mlp_forward(model.decoder, enc.output, true);
    const LossValue loss = reconstruction_loss(cfg.loss, batch, dec.output);
    require_finite(loss.value, "reconstruction");
    recon_value = loss.value;
    const auto dec_back = mlp_backward(model.decoder, dec.cache, loss.grad);
    const auto enc_back = mlp_backward(model.encoder, enc.cache, dec_back.grad_input);
    adam_step(concat(model.encoder.params.tensors(), model.decoder.params.tensors()),
              concat(enc_back.grads.tensors(), dec_back.grads.tensors()), opt.autoencoder);
  }

  // Phase 2: discriminator, prior draws labelled 1, encodings labelled 0.
  double disc_value = 0.0;
  {
    const Tensor prior = sample_gaussian(rng, {batch.rows(), model.latent_dim()}, 1.0);
    const Tensor encoded = mlp_predict(model.encoder, noisy);
    const auto on_prior = mlp_forward(disc, prior, true, dropout, &rng);
    const auto on_encoded = mlp_forward(disc, encoded, true, dropout, &rng);
    const AdversarialValue adv = adversarial_losses(on_prior.output, on_encoded.output);
    require_finite(adv.disc_loss, "discriminator");
    disc_value = adv.disc_loss;
    MlpParams grads = mlp_backward(disc, on_prior.cache, adv.disc_grad_prior).grads;
    accumulate(grads, mlp_backward(disc, on_encoded.cache, adv.disc_grad_encoded).grads);
    adam_step(disc.params.tensors(), std::as_const(grads).tensors(), opt.discriminator);
  }

  // Phase 3: encoder tries to make its codes look like prior draws.
  double enc_value = 0.0;
  {
    const auto enc = mlp_forward(model.encoder, noisy, true);
    const auto scored = mlp_forward(disc, enc.output, true, dropout, &rng);
    const LossValue fool = bce_loss(Tensor(scored.output.shape(), 1.0), scored.output);
    require_finite(fool.value, "encoder adversarial");
    enc_value = fool.value;
    const auto disc_back = mlp_backward(disc, scored.cache, fool.grad);
    const auto enc_back = mlp_backward(model.encoder, enc.cache,
                                       scaled(disc_back.grad_input, cfg.regularizer_weight));
    adam_step(model.encoder.params.tensors(), enc_back.grads.tensors(), opt.encoder_adversarial);
  }
  return {recon_value, 0.0, disc_value, enc_value};
}

StepLosses train_step(Autoencoder& model, const Tensor& batch, const TrainConfig& cfg, Prng& rng,
                      OptimizerStates& opt) {
  switch (model.kind) {
    case ModelKind::dae: return dae_train_step(model, batch, cfg, rng, opt);
    case ModelKind::dvae: return dvae_train_step(model, batch, cfg, rng, opt);
    case ModelKind::daae: return daae_train_step(model, batch, cfg, rng, opt);
  }
  throw ArgumentError("train_step: unknown model kind");
}

TrainResult train(Autoencoder model, const Tensor& dataset, const TrainConfig& cfg) {
  cfg.validate();
  model.validate();
  if (dataset.rank() != 2 || dataset.rows() == 0) {
    throw ArgumentError("train: dataset is empty");
  }
  if (dataset.cols() != model.data_dim()) {
    throw ShapeError("train: dataset has " + std::to_string(dataset.cols()) +
                     " columns, model expects " + std::to_string(model.data_dim()));
  }
  require_unit_interval(dataset);

  Prng rng(cfg.seed ^ kTrainingStreamOffset);
  OptimizerStates opt = OptimizerStates::for_model(model, cfg.adam);
  std::vector<std::size_t> order(dataset.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result{std::move(model), {}, {}};
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.uniform_index(i)]);
    }
    EpochStats stats;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const Tensor batch =
          gather_rows(dataset, std::span<const std::size_t>(order.data() + start, end - start));
      const StepLosses step = train_step(result.model, batch, cfg, rng, opt);
      stats.reconstruction += step.reconstruction;
      stats.kl += step.kl;
      stats.disc += step.disc;
      stats.enc += step.enc;
      ++batches;
    }
    const double n = static_cast<double>(batches);
    stats.reconstruction /= n;
    stats.kl /= n;
    stats.disc /= n;
    stats.enc /= n;
    result.trace.push_back(stats);
  }
  result.optimizer = std::move(opt);
  return result;
}

TrainResult train(ModelKind kind, const Tensor& dataset, const TrainConfig& cfg,
                  const Architecture& arch, CorruptionSpec corruption) {
  Prng init_rng(cfg.seed);
  return train(make_autoencoder(kind, arch, corruption, init_rng), dataset, cfg);
}

}  // namespace dae
