#include "dae/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "dae/checkpoint.hpp"
#include "dae/config.hpp"
#include "dae/csv.hpp"
#include "dae/datasets.hpp"
#include "dae/error.hpp"
#include "dae/image_io.hpp"
#include "dae/oracle.hpp"
#include "dae/sampler.hpp"
#include "dae/training.hpp"

namespace dae {

namespace {

constexpr std::uint64_t kDataStream = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kSamplingStream = 0xA24BAED4963EE407ULL;

bool is_mixture(DatasetKind kind) {
  return kind == DatasetKind::mixture1d || kind == DatasetKind::mixture2d;
}

Tensor build_dataset(const RunConfig& cfg) {
  Prng rng(cfg.seed ^ kDataStream);
  switch (cfg.dataset) {
    case DatasetKind::mixture1d:
    case DatasetKind::mixture2d: {
      const GaussianMixture gm = cfg.mixture();
      const std::size_t want = cfg.dataset == DatasetKind::mixture1d ? 1 : 2;
      if (gm.dim != want) throw ConfigError("mixture dimension does not match dataset kind", 0);
      gm.validate_unit_cube();
      return generate_mixture_dataset(gm, cfg.dataset_n, rng);
    }
    case DatasetKind::blobs8x8: return generate_blobs8x8(cfg.dataset_n, rng);
    case DatasetKind::idx_images:
      if (cfg.dataset_path.empty()) throw ConfigError("idx_images needs dataset_path", 0);
      return load_idx_images(cfg.dataset_path);
  }
  throw ArgumentError("unknown dataset kind");
}

/// The reference density for a model, when the configured dataset is a matching mixture.
std::optional<GaussianMixture> reference_for(const RunConfig& cfg, std::size_t data_dim) {
  if (!is_mixture(cfg.dataset)) return std::nullopt;
  GaussianMixture gm = cfg.mixture();
  if (gm.dim != data_dim) return std::nullopt;
  return gm;
}

std::size_t square_side(std::size_t d) {
  const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d))));
  return side * side == d && side > 1 ? side : 0;
}

void export_trace(const RunConfig& cfg, const ChainTrace& trace, std::ostream& out) {
  const std::size_t chains = trace.chains();
  const std::size_t dim = trace.states.front().cols();
  if (!cfg.trace_csv.empty()) {
    std::vector<std::string> header{"chain", "step"};
    for (std::size_t j = 0; j < dim; ++j) header.push_back("x" + std::to_string(j));
    if (trace.log_density) header.push_back("log_density");
    std::vector<std::vector<double>> rows;
    for (std::size_t c = 0; c < chains; ++c) {
      for (std::size_t s = 0; s < trace.states.size(); ++s) {
        std::vector<double> row{static_cast<double>(c),
                                static_cast<double>(trace.recorded_steps[s])};
        auto x = trace.states[s].row(c);
        row.insert(row.end(), x.begin(), x.end());
        if (trace.log_density) row.push_back((*trace.log_density)[s][c]);
        rows.push_back(std::move(row));
      }
    }
    write_csv(cfg.trace_csv, header, rows);
    out << "wrote " << cfg.trace_csv << "\n";
  }
  if (!cfg.samples_pgm.empty()) {
    const std::size_t side = square_side(dim);
    if (side == 0) {
      out << "data dim " << dim << " is not a square image; skipping " << cfg.samples_pgm << "\n";
    } else {
      // One row per chain, one column per recorded step.
      const std::size_t shown = std::min(cfg.pgm_chains, chains);
      const std::size_t recorded = trace.states.size();
      Tensor tiles({shown * recorded, dim});
      for (std::size_t c = 0; c < shown; ++c) {
        for (std::size_t s = 0; s < recorded; ++s) {
          auto src = trace.states[s].row(c);
          std::copy(src.begin(), src.end(), tiles.row(c * recorded + s).begin());
        }
      }
      write_pgm_grid(tiles, side, side, recorded, cfg.samples_pgm);
      out << "wrote " << cfg.samples_pgm << "\n";
    }
  }
  if (trace.log_density) {
    double first = 0.0, last = 0.0;
    for (std::size_t c = 0; c < chains; ++c) {
      first += trace.log_density->front()[c];
      last += trace.log_density->back()[c];
    }
    out << "mean log p: step 0 = " << format_number(first / static_cast<double>(chains))
        << ", step " << trace.recorded_steps.back() << " = "
        << format_number(last / static_cast<double>(chains)) << "\n";
  }
}

void run_train(const RunConfig& cfg, std::ostream& out) {
  const Tensor data = build_dataset(cfg);
  const TrainResult result = train(cfg.model, data, cfg.train_config(),
                                   cfg.architecture(data.cols()), CorruptionSpec{cfg.sigma});
  save_checkpoint(result.model, cfg.checkpoint);
  out << "wrote " << cfg.checkpoint << "\n";
  if (!cfg.loss_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t e = 0; e < result.trace.size(); ++e) {
      const auto& s = result.trace[e];
      rows.push_back({static_cast<double>(e + 1), s.reconstruction, s.kl, s.disc, s.enc});
    }
    write_csv(cfg.loss_csv, {"epoch", "reconstruction", "kl", "disc", "enc"}, rows);
    out << "wrote " << cfg.loss_csv << "\n";
  }
  out << "final reconstruction loss " << format_number(result.trace.back().reconstruction)
      << "\n";
}

void run_chains(const RunConfig& cfg, bool from_prior, std::ostream& out) {
  const Autoencoder model = load_checkpoint(cfg.checkpoint);
  const auto reference = reference_for(cfg, model.data_dim());
  Prng rng(cfg.seed ^ kSamplingStream);
  const ChainTrace trace =
      from_prior ? refine_from_prior(model, cfg.chains, cfg.chain_config(), rng,
                                     reference ? &*reference : nullptr)
                 : sample_from_noise(model, cfg.chains, cfg.chain_config(), rng,
                                     reference ? &*reference : nullptr);
  export_trace(cfg, trace, out);
}

void run_score_check(const RunConfig& cfg, std::ostream& out) {
  const Autoencoder model = load_checkpoint(cfg.checkpoint);
  const GaussianMixture gm = cfg.mixture();
  if (gm.dim != model.data_dim()) throw ConfigError("mixture dim differs from model data dim", 0);
  const double sigma = model.corruption.sigma;
  if (!(sigma > 0.0)) throw ArgumentError("score-check needs a model trained with sigma > 0");

  const std::vector<Point> grid = high_density_grid(gm, cfg.grid_points);
  Tensor x({grid.size(), gm.dim});
  for (std::size_t i = 0; i < grid.size(); ++i) std::copy(grid[i].begin(), grid[i].end(), x.row(i).begin());
  const Tensor r = reconstruct(model, x);

  std::vector<Point> estimated, analytic;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    estimated.push_back(score_from_reconstruction(r.row(i), x.row(i), sigma));
    analytic.push_back(analytic_score(gm, grid[i]));
    std::vector<double> row(grid[i]);
    row.insert(row.end(), r.row(i).begin(), r.row(i).end());
    row.insert(row.end(), estimated.back().begin(), estimated.back().end());
    row.insert(row.end(), analytic.back().begin(), analytic.back().end());
    rows.push_back(std::move(row));
  }
  if (!cfg.score_csv.empty()) {
    std::vector<std::string> header;
    for (const char* prefix : {"x", "r", "score_est", "score_true"}) {
      for (std::size_t j = 0; j < gm.dim; ++j) header.push_back(prefix + std::to_string(j));
    }
    write_csv(cfg.score_csv, header, rows);
    out << "wrote " << cfg.score_csv << "\n";
  }
  const ScoreAgreement agreement = compare_scores(estimated, analytic);
  out << "grid points " << grid.size() << ", sign agreement "
      << format_number(agreement.sign_agreement) << ", pearson "
      << format_number(agreement.pearson) << "\n";
}

void run_oracle_check(const RunConfig& cfg, std::ostream& out) {
  const GaussianMixture gm = cfg.mixture();
  const std::vector<Point> grid = high_density_grid(gm, cfg.grid_points);
  const ConvergenceStudy study =
      limit_convergence_study(gm, cfg.oracle_sigmas, grid, cfg.quadrature);
  std::vector<std::vector<double>> rows;
  for (const auto& row : study.rows) {
    rows.push_back({row.sigma, row.max_relative_error});
    out << "sigma " << format_number(row.sigma) << "  max relative score error "
        << format_number(row.max_relative_error) << "\n";
  }
  out << "non-increasing as sigma shrinks: " << (study.non_increasing ? "yes" : "no") << "\n";
  if (!cfg.oracle_csv.empty()) {
    write_csv(cfg.oracle_csv, {"sigma", "max_relative_error"}, rows);
    out << "wrote " << cfg.oracle_csv << "\n";
  }
}

}  // namespace

int cli_main(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  CLI::App app{"Denoising autoencoders: training, score checks and sampling chains", "dae"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"train", "train a model and write a checkpoint plus loss CSV"},
      {"sample", "run chains from uniform noise through a trained model"},
      {"refine", "decode prior draws and refine them with the model's chain"},
      {"score-check", "compare (R(x) - x) / sigma^2 with the true mixture score"},
      {"oracle-check", "score error of the optimal reconstruction as sigma shrinks"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--set", overrides, "override one key, key=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "dae: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    for (const auto& o : overrides) apply_override(cfg, o);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "train") {
      run_train(cfg, out);
    } else if (name == "sample") {
      run_chains(cfg, false, out);
    } else if (name == "refine") {
      run_chains(cfg, true, out);
    } else if (name == "score-check") {
      run_score_check(cfg, out);
    } else {
      run_oracle_check(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "dae: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dae
