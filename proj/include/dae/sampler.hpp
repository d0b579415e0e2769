#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dae/mixture.hpp"
#include "dae/model.hpp"
#include "dae/random.hpp"
#include "dae/tensor.hpp"

namespace dae {

/// Maps a batch of data-space points [batch x d] to their reconstructions.
using ReconstructionFn = std::function<Tensor(const Tensor&)>;

ReconstructionFn reconstruction_of(const Autoencoder& model);

struct ChainConfig {
  std::size_t steps = 20;        // number of reconstructions T
  double inject_sigma = 0.0;     // noise sd added before each encoding; 0 disables
  std::size_t record_every = 1;

  void validate() const;
};

/// States of a batch of independent chains (one per row).
struct ChainTrace {
  std::vector<std::size_t> recorded_steps;  // always starts with 0 and ends with T
  std::vector<Tensor> states;               // [batch x d] per recorded step
  /// displacements[t][c] = ||x_{t+1} - x_t|| for chain c, one entry per step.
  std::vector<std::vector<double>> displacements;
  /// Present when a reference density was supplied: log p per recorded step and chain.
  std::optional<std::vector<std::vector<double>>> log_density;

  std::size_t chains() const { return states.empty() ? 0 : states.front().rows(); }
};

/// x_{t+1} = R(x_t + eta_t), eta_t ~ N(0, inject_sigma^2 I). `rng` is needed iff
/// inject_sigma > 0. States are never clamped. Throws NumericError naming the step at which a
/// state stops being finite.
ChainTrace run_chain(const ReconstructionFn& reconstruct, const Tensor& x0,
                     const ChainConfig& cfg, Prng* rng,
                     const GaussianMixture* reference = nullptr);

/// x_0 ~ U(0,1)^d per chain, then run_chain.
ChainTrace sample_from_noise(const ReconstructionFn& reconstruct, std::size_t data_dim,
                             std::size_t batch, const ChainConfig& cfg, Prng& rng,
                             const GaussianMixture* reference = nullptr);
ChainTrace sample_from_noise(const Autoencoder& model, std::size_t batch, const ChainConfig& cfg,
                             Prng& rng, const GaussianMixture* reference = nullptr);

/// z ~ N(0, I_L), x_0 = decoder(z), then run_chain with the model's own reconstruction.
ChainTrace refine_from_prior(const Autoencoder& model, std::size_t batch, const ChainConfig& cfg,
                             Prng& rng, const GaussianMixture* reference = nullptr);

struct ChainDiagnostics {
  std::vector<std::vector<double>> log_density;   // [recorded][chain]
  std::vector<std::vector<double>> displacements;  // [step][chain]
  std::vector<std::vector<std::size_t>> mode;      // [recorded][chain], responsibility argmax
  std::vector<std::size_t> mode_switches;          // per chain, over recorded states
  std::size_t total_switches = 0;
  std::size_t chains_with_switch = 0;
};

ChainDiagnostics chain_diagnostics(const ChainTrace& trace, const GaussianMixture& gm);

}  // namespace dae
