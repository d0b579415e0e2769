#include "dae/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dae/error.hpp"

namespace dae {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    parts.push_back(trim(s.substr(start, at == std::string_view::npos ? s.npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

double parse_real(std::string_view text, std::string_view key, std::size_t line) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(t) + "'",
                      line);
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key, std::size_t line) {
  std::uint64_t v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                          std::string(t) + "'",
                      line);
  }
  return v;
}

std::vector<double> parse_reals(std::string_view text, std::string_view key, std::size_t line) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_real(part, key, line));
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view text, std::string_view key,
                                     std::size_t line) {
  std::vector<std::size_t> out;
  for (auto part : split(text, ',')) out.push_back(parse_unsigned(part, key, line));
  return out;
}

template <typename Enum>
Enum parse_choice(std::string_view text, std::string_view key, std::size_t line,
                  std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  const auto t = trim(text);
  for (const auto& [name, value] : choices) {
    if (t == name) return value;
  }
  std::string allowed;
  for (const auto& c : choices) allowed += (allowed.empty() ? "" : "|") + std::string(c.first);
  throw ConfigError("'" + std::string(key) + "' must be one of " + allowed + ", got '" +
                        std::string(t) + "'",
                    line);
}

std::vector<Point> parse_points(const std::string& text, std::size_t dim) {
  std::vector<Point> out;
  for (auto part : split(text, ';')) {
    Point p = parse_reals(part, "mixture", 0);
    if (p.size() == 1 && dim > 1) p.assign(dim, p[0]);
    if (p.size() != dim) throw ConfigError("mixture entry has the wrong dimension", 0);
    out.push_back(std::move(p));
  }
  return out;
}

// One weight per component: ';' like the other mixture keys, ',' also accepted.
std::vector<double> parse_component_weights(std::string text) {
  std::replace(text.begin(), text.end(), ';', ',');
  return parse_reals(text, "mixture_weights", 0);
}

}  // namespace

void RunConfig::set(std::string_view raw_key, std::string_view raw_value, std::size_t line) {
  const std::string key(trim(raw_key));
  const std::string_view v = trim(raw_value);
  using Setter = std::function<void()>;
  const std::map<std::string, Setter> setters = {
      {"model", [&] { model = parse_choice<ModelKind>(v, key, line, {{"dae", ModelKind::dae},
                                                                     {"dvae", ModelKind::dvae},
                                                                     {"daae", ModelKind::daae}}); }},
      {"loss", [&] { loss = parse_choice<LossKind>(v, key, line, {{"bce", LossKind::bce},
                                                                  {"mse", LossKind::mse}}); }},
      {"sigma", [&] { sigma = parse_real(v, key, line); }},
      {"epochs", [&] { epochs = parse_unsigned(v, key, line); }},
      {"batch_size", [&] { batch_size = parse_unsigned(v, key, line); }},
      {"seed", [&] { seed = parse_unsigned(v, key, line); }},
      {"regularizer_weight", [&] { regularizer_weight = parse_real(v, key, line); }},
      {"adam_alpha", [&] { adam.alpha = parse_real(v, key, line); }},
      {"adam_beta1", [&] { adam.beta1 = parse_real(v, key, line); }},
      {"adam_beta2", [&] { adam.beta2 = parse_real(v, key, line); }},
      {"latent_dim", [&] { latent_dim = parse_unsigned(v, key, line); }},
      {"hidden", [&] { hidden = parse_sizes(v, key, line); }},
      {"disc_hidden", [&] { disc_hidden = parse_sizes(v, key, line); }},
      {"disc_dropout", [&] { disc_dropout = parse_real(v, key, line); }},
      {"dataset", [&] {
         dataset = parse_choice<DatasetKind>(v, key, line,
                                             {{"mixture1d", DatasetKind::mixture1d},
                                              {"mixture2d", DatasetKind::mixture2d},
                                              {"blobs8x8", DatasetKind::blobs8x8},
                                              {"idx_images", DatasetKind::idx_images}});
       }},
      {"dataset_n", [&] { dataset_n = parse_unsigned(v, key, line); }},
      {"dataset_path", [&] { dataset_path = v; }},
      {"mixture_weights", [&] { mixture_weights = v; }},
      {"mixture_means", [&] { mixture_means = v; }},
      {"mixture_variances", [&] { mixture_variances = v; }},
      {"chain_steps", [&] { chain_steps = parse_unsigned(v, key, line); }},
      {"inject_sigma", [&] { inject_sigma = parse_real(v, key, line); }},
      {"record_every", [&] { record_every = parse_unsigned(v, key, line); }},
      {"chains", [&] { chains = parse_unsigned(v, key, line); }},
      {"pgm_chains", [&] { pgm_chains = parse_unsigned(v, key, line); }},
      {"oracle_sigmas", [&] { oracle_sigmas = parse_reals(v, key, line); }},
      {"quadrature", [&] {
         quadrature.method = parse_choice<QuadratureMethod>(
             v, key, line,
             {{"gauss_hermite", QuadratureMethod::gauss_hermite},
              {"monte_carlo", QuadratureMethod::monte_carlo}});
       }},
      {"quad_nodes", [&] { quadrature.nodes_per_dim = parse_unsigned(v, key, line); }},
      {"quad_samples", [&] { quadrature.n_samples = parse_unsigned(v, key, line); }},
      {"quad_seed", [&] { quadrature.mc_seed = parse_unsigned(v, key, line); }},
      {"grid_points", [&] { grid_points = parse_unsigned(v, key, line); }},
      {"checkpoint", [&] { checkpoint = v; }},
      {"loss_csv", [&] { loss_csv = v; }},
      {"trace_csv", [&] { trace_csv = v; }},
      {"samples_pgm", [&] { samples_pgm = v; }},
      {"score_csv", [&] { score_csv = v; }},
      {"oracle_csv", [&] { oracle_csv = v; }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown key '" + key + "'", line);
  it->second();
}

GaussianMixture RunConfig::mixture() const {
  GaussianMixture gm;
  if (dataset == DatasetKind::mixture2d) {
    gm = GaussianMixture::equal_weights({{0.3, 0.3}, {0.7, 0.3}, {0.3, 0.7}, {0.7, 0.7}}, 0.0025);
  } else {
    gm = GaussianMixture::equal_weights({{0.35}, {0.65}}, 0.0025);
  }
  if (!mixture_means.empty()) {
    const std::size_t inferred = split(split(mixture_means, ';').front(), ',').size();
    gm.dim = inferred;
    gm.means = parse_points(mixture_means, inferred);
    const std::size_t k = gm.means.size();
    gm.weights = mixture_weights.empty() ? std::vector<double>(k, 1.0 / static_cast<double>(k))
                                         : parse_component_weights(mixture_weights);
    gm.variances = mixture_variances.empty() ? std::vector<Point>(k, Point(inferred, 0.0025))
                                             : parse_points(mixture_variances, inferred);
  } else if (!mixture_weights.empty() || !mixture_variances.empty()) {
    throw ConfigError("mixture_weights/mixture_variances need mixture_means", 0);
  }
  try {
    gm.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what(), 0);
  }
  return gm;
}

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.loss = loss;
  t.epochs = epochs;
  t.batch_size = batch_size;
  t.seed = seed;
  t.regularizer_weight = regularizer_weight;
  t.adam = adam;
  return t;
}

Architecture RunConfig::architecture(std::size_t data_dim) const {
  Architecture a;
  a.data_dim = data_dim;
  a.latent_dim = latent_dim != 0 ? latent_dim : (data_dim <= 3 ? 2 : 8);
  a.hidden = hidden;
  a.discriminator_hidden = disc_hidden;
  a.discriminator_dropout = disc_dropout;
  return a;
}

ChainConfig RunConfig::chain_config() const {
  return {chain_steps, inject_sigma, record_every};
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == text.npos ? text.npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == line.npos) throw ConfigError("expected 'key = value'", line_no);
      if (trim(line.substr(0, eq)).empty()) throw ConfigError("empty key", line_no);
      cfg.set(line.substr(0, eq), line.substr(eq + 1), line_no);
    }
    if (end == text.npos) break;
    start = end + 1;
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == assignment.npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value", 0);
  }
  cfg.set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace dae
