#include "dae/sampler.hpp"

#include <cmath>

#include "dae/error.hpp"

namespace dae {

namespace {

std::vector<double> row_log_density(const Tensor& states, const GaussianMixture& gm) {
  std::vector<double> out(states.rows());
  for (std::size_t c = 0; c < states.rows(); ++c) out[c] = mixture_log_pdf(gm, states.row(c));
  return out;
}

}  // namespace

ReconstructionFn reconstruction_of(const Autoencoder& model) {
  return [&model](const Tensor& x) { return reconstruct(model, x); };
}

void ChainConfig::validate() const {
  if (steps < 1) throw ArgumentError("chain steps must be >= 1");
  if (record_every < 1 || record_every > steps) {
    throw ArgumentError("record_every must lie in [1, steps]");
  }
  if (!(inject_sigma >= 0.0)) throw ArgumentError("inject_sigma must be non-negative");
}

ChainTrace run_chain(const ReconstructionFn& reconstruct, const Tensor& x0,
                     const ChainConfig& cfg, Prng* rng, const GaussianMixture* reference) {
  cfg.validate();
  if (x0.rank() != 2) throw ShapeError("run_chain: x0 must be [batch x d]");
  if (cfg.inject_sigma > 0.0 && rng == nullptr) {
    throw ArgumentError("run_chain: noise injection needs a random source");
  }
  if (!x0.all_finite()) throw NumericError("run_chain: initial state is not finite");

  ChainTrace trace;
  if (reference) trace.log_density.emplace();
  auto record = [&](std::size_t step, const Tensor& x) {
    trace.recorded_steps.push_back(step);
    trace.states.push_back(x);
    if (reference) trace.log_density->push_back(row_log_density(x, *reference));
  };

  Tensor x = x0;
  record(0, x);
  for (std::size_t t = 1; t <= cfg.steps; ++t) {
    Tensor input = cfg.inject_sigma > 0.0
                       ? add(x, sample_gaussian(*rng, x.shape(), cfg.inject_sigma))
                       : x;
    Tensor next = reconstruct(input);
    if (next.shape() != x.shape()) {
      throw ShapeError("run_chain: reconstruction changed the state shape at step " +
                       std::to_string(t));
    }
    if (!next.all_finite()) {
      throw NumericError("run_chain: non-finite state at step " + std::to_string(t));
    }
    std::vector<double> moved(x.rows());
    for (std::size_t c = 0; c < x.rows(); ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.cols(); ++j) {
        const double d = next.at(c, j) - x.at(c, j);
        s += d * d;
      }
      moved[c] = std::sqrt(s);
    }
    trace.displacements.push_back(std::move(moved));
    x = std::move(next);
    if (t % cfg.record_every == 0 || t == cfg.steps) record(t, x);
  }
  return trace;
}

ChainTrace sample_from_noise(const ReconstructionFn& reconstruct, std::size_t data_dim,
                             std::size_t batch, const ChainConfig& cfg, Prng& rng,
                             const GaussianMixture* reference) {
  if (batch < 1) throw ArgumentError("sample_from_noise: batch must be >= 1");
  const Tensor x0 = sample_uniform(rng, {batch, data_dim}, 0.0, 1.0);
  return run_chain(reconstruct, x0, cfg, &rng, reference);
}

ChainTrace sample_from_noise(const Autoencoder& model, std::size_t batch, const ChainConfig& cfg,
                             Prng& rng, const GaussianMixture* reference) {
  return sample_from_noise(reconstruction_of(model), model.data_dim(), batch, cfg, rng,
                           reference);
}

ChainTrace refine_from_prior(const Autoencoder& model, std::size_t batch, const ChainConfig& cfg,
                             Prng& rng, const GaussianMixture* reference) {
  if (batch < 1) throw ArgumentError("refine_from_prior: batch must be >= 1");
  const Tensor z = sample_gaussian(rng, {batch, model.latent_dim()}, 1.0);
  const Tensor x0 = decode(model, z);
  return run_chain(reconstruction_of(model), x0, cfg, &rng, reference);
}

ChainDiagnostics chain_diagnostics(const ChainTrace& trace, const GaussianMixture& gm) {
  ChainDiagnostics d;
  d.displacements = trace.displacements;
  const std::size_t chains = trace.chains();
  d.mode_switches.assign(chains, 0);
  for (const Tensor& states : trace.states) {
    d.log_density.push_back(row_log_density(states, gm));
    std::vector<std::size_t> modes(chains);
    for (std::size_t c = 0; c < chains; ++c) modes[c] = dominant_component(gm, states.row(c));
    if (!d.mode.empty()) {
      for (std::size_t c = 0; c < chains; ++c) {
        if (modes[c] != d.mode.back()[c]) ++d.mode_switches[c];
      }
    }
    d.mode.push_back(std::move(modes));
  }
  for (std::size_t s : d.mode_switches) {
    d.total_switches += s;
    if (s > 0) ++d.chains_with_switch;
  }
  return d;
}

}  // namespace dae
