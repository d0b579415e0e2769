#include "dae/model.hpp"

#include "dae/error.hpp"

namespace dae {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::dae: return "dae";
    case ModelKind::dvae: return "dvae";
    case ModelKind::daae: return "daae";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "dae") return ModelKind::dae;
  if (text == "dvae") return ModelKind::dvae;
  if (text == "daae") return ModelKind::daae;
  throw ArgumentError("unknown model kind '" + std::string(text) + "'");
}

void Autoencoder::validate() const {
  encoder.spec.validate();
  decoder.spec.validate();
  if (!(corruption.sigma >= 0.0)) throw ArgumentError("corruption sigma must be non-negative");
  const std::size_t latent = latent_dim();
  const std::size_t expected_code = kind == ModelKind::dvae ? 2 * latent : latent;
  if (encoder.spec.output_dim() != expected_code) {
    throw ShapeError("encoder output dim " + std::to_string(encoder.spec.output_dim()) +
                     " does not match decoder input dim " + std::to_string(latent) +
                     (kind == ModelKind::dvae ? " (x2 for mu/logvar)" : ""));
  }
  if (decoder.spec.output_dim() != data_dim()) {
    throw ShapeError("decoder output dim " + std::to_string(decoder.spec.output_dim()) +
                     " differs from data dim " + std::to_string(data_dim()));
  }
  if (decoder.spec.output != OutputActivation::sigmoid) {
    throw ArgumentError("decoder must end in a sigmoid");
  }
  if (kind == ModelKind::daae) {
    if (!discriminator) throw ArgumentError("daae model needs a discriminator");
    discriminator->spec.validate();
    if (discriminator->spec.input_dim() != latent || discriminator->spec.output_dim() != 1) {
      throw ShapeError("discriminator must map the latent dim to one score");
    }
    if (!(discriminator_dropout >= 0.0 && discriminator_dropout < 1.0)) {
      throw ArgumentError("discriminator dropout must lie in [0, 1)");
    }
  } else if (discriminator) {
    throw ArgumentError("only daae models carry a discriminator");
  }
}

Autoencoder make_autoencoder(ModelKind kind, const Architecture& arch, CorruptionSpec corruption,
                             Prng& rng) {
  auto sizes = [](std::size_t in, const std::vector<std::size_t>& hidden, std::size_t out) {
    std::vector<std::size_t> s{in};
    s.insert(s.end(), hidden.begin(), hidden.end());
    s.push_back(out);
    return s;
  };
  const std::size_t code = kind == ModelKind::dvae ? 2 * arch.latent_dim : arch.latent_dim;

  Autoencoder model;
  model.kind = kind;
  model.corruption = corruption;
  model.encoder = make_mlp({sizes(arch.data_dim, arch.hidden, code), HiddenActivation::relu, 0.2,
                            OutputActivation::identity},
                           rng);
  std::vector<std::size_t> reversed(arch.hidden.rbegin(), arch.hidden.rend());
  model.decoder = make_mlp({sizes(arch.latent_dim, reversed, arch.data_dim),
                            HiddenActivation::relu, 0.2, OutputActivation::sigmoid},
                           rng);
  if (kind == ModelKind::daae) {
    model.discriminator =
        make_mlp({sizes(arch.latent_dim, arch.discriminator_hidden, 1),
                  HiddenActivation::leaky_relu, arch.leaky_slope, OutputActivation::sigmoid},
                 rng);
    model.discriminator_dropout = arch.discriminator_dropout;
  }
  model.validate();
  return model;
}

Tensor corrupt(const Tensor& x, const CorruptionSpec& spec, Prng& rng) {
  if (spec.sigma == 0.0) return x;
  return add(x, sample_gaussian(rng, x.shape(), spec.sigma));
}

Tensor encode(const Autoencoder& model, const Tensor& x) {
  Tensor code = mlp_predict(model.encoder, x);
  if (model.kind == ModelKind::dvae) return slice_columns(code, 0, model.latent_dim());
  return code;
}

Tensor decode(const Autoencoder& model, const Tensor& z) { return mlp_predict(model.decoder, z); }

Tensor reconstruct(const Autoencoder& model, const Tensor& x) {
  if (x.rank() != 2 || x.cols() != model.data_dim()) {
    throw ShapeError("reconstruct: input " + shape_to_string(x.shape()) + " but data dim is " +
                     std::to_string(model.data_dim()));
  }
  return decode(model, encode(model, x));
}

}  // namespace dae
