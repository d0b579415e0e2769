#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dae/mlp.hpp"
#include "dae/random.hpp"
#include "dae/tensor.hpp"

namespace dae {

enum class ModelKind { dae, dvae, daae };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Additive Gaussian corruption x + eps, eps ~ N(0, sigma^2 I).
struct CorruptionSpec {
  double sigma = 0.5;

  friend bool operator==(const CorruptionSpec&, const CorruptionSpec&) = default;
};

/// Encoder/decoder pair covering the three variants:
///  - dae:  encoder d -> L, decoder L -> d
///  - dvae: encoder d -> 2L, read as (mu, logvar)
///  - daae: as dae, plus a discriminator L -> 1 with leaky ReLU and dropout
/// The decoder always ends in a sigmoid so reconstructions lie in (0, 1).
struct Autoencoder {
  ModelKind kind = ModelKind::dae;
  Mlp encoder;
  Mlp decoder;
  std::optional<Mlp> discriminator;
  double discriminator_dropout = 0.0;
  CorruptionSpec corruption;

  std::size_t data_dim() const { return encoder.spec.input_dim(); }
  std::size_t latent_dim() const { return decoder.spec.input_dim(); }

  /// Throws ShapeError/ArgumentError when the pieces do not fit together.
  void validate() const;

  friend bool operator==(const Autoencoder&, const Autoencoder&) = default;
};

struct Architecture {
  std::size_t data_dim = 1;
  std::size_t latent_dim = 2;
  std::vector<std::size_t> hidden = {128, 128};
  std::vector<std::size_t> discriminator_hidden = {64, 64};
  double discriminator_dropout = 0.2;
  double leaky_slope = 0.2;
};

Autoencoder make_autoencoder(ModelKind kind, const Architecture& arch, CorruptionSpec corruption,
                             Prng& rng);

/// x + eps with eps ~ N(0, sigma^2 I). The result is not clamped.
Tensor corrupt(const Tensor& x, const CorruptionSpec& spec, Prng& rng);

/// Deterministic latent code: the encoder output, or the posterior mean for a DVAE.
Tensor encode(const Autoencoder& model, const Tensor& x);
Tensor decode(const Autoencoder& model, const Tensor& z);
/// R(x) = decode(encode(x)) in eval mode. Rows of `x` are points in data space.
Tensor reconstruct(const Autoencoder& model, const Tensor& x);

}  // namespace dae
