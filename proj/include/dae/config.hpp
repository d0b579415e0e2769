#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dae/losses.hpp"
#include "dae/mixture.hpp"
#include "dae/model.hpp"
#include "dae/quadrature.hpp"
#include "dae/sampler.hpp"
#include "dae/training.hpp"

namespace dae {

enum class DatasetKind { mixture1d, mixture2d, blobs8x8, idx_images };

/// Settings shared by all CLI subcommands. Text form: one `key = value` per line, '#' starts
/// a comment, blank lines ignored. Lists use ',' and mixture components are separated by ';'.
struct RunConfig {
  ModelKind model = ModelKind::dae;
  LossKind loss = LossKind::bce;
  double sigma = 0.5;
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  double regularizer_weight = 1.0;
  AdamConfig adam;
  std::size_t latent_dim = 0;  // 0: 2 for point data, 8 for images
  std::vector<std::size_t> hidden = {128, 128};
  std::vector<std::size_t> disc_hidden = {64, 64};
  double disc_dropout = 0.2;

  DatasetKind dataset = DatasetKind::mixture1d;
  std::size_t dataset_n = 10000;
  std::string dataset_path;
  std::string mixture_weights;    // empty: default mixture for the dataset kind
  std::string mixture_means;
  std::string mixture_variances;

  std::size_t chain_steps = 20;
  double inject_sigma = 0.0;
  std::size_t record_every = 1;
  std::size_t chains = 256;
  std::size_t pgm_chains = 8;

  std::vector<double> oracle_sigmas = {0.2, 0.1, 0.05, 0.02, 0.01};
  QuadratureSpec quadrature;
  std::size_t grid_points = 201;

  std::string checkpoint = "model.daeb";
  std::string loss_csv;
  std::string trace_csv;
  std::string samples_pgm;
  std::string score_csv;
  std::string oracle_csv;

  /// Sets one key from its text value. `line` is used in error messages (0 = not from a file).
  void set(std::string_view key, std::string_view value, std::size_t line = 0);

  GaussianMixture mixture() const;
  TrainConfig train_config() const;
  Architecture architecture(std::size_t data_dim) const;
  ChainConfig chain_config() const;
};

/// Parses config text on top of the defaults. Unknown keys and malformed lines raise
/// ConfigError carrying the 1-based line number.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);
/// Applies a "key=value" override.
void apply_override(RunConfig& cfg, std::string_view assignment);

}  // namespace dae
