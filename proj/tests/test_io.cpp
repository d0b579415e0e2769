#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dae/checkpoint.hpp"
#include "dae/config.hpp"
#include "dae/csv.hpp"
#include "dae/datasets.hpp"
#include "dae/error.hpp"
#include "dae/image_io.hpp"
#include "dae/mixture.hpp"
#include "dae/model.hpp"
#include "support/temp_dir.hpp"

using namespace dae;
using dae::testing::read_bytes;
using dae::testing::read_text;
using dae::testing::TempDir;
using dae::testing::write_bytes;

namespace {

std::vector<unsigned char> idx_header(std::uint32_t magic, std::uint32_t n, std::uint32_t rows,
                                      std::uint32_t cols) {
  std::vector<unsigned char> b;
  for (std::uint32_t v : {magic, n, rows, cols}) {
    for (int shift = 24; shift >= 0; shift -= 8) b.push_back(static_cast<unsigned char>(v >> shift));
  }
  return b;
}

Autoencoder model_of(ModelKind kind, std::uint64_t seed) {
  Architecture arch;
  arch.data_dim = 3;
  arch.latent_dim = 2;
  arch.hidden = {5, 4};
  arch.discriminator_hidden = {3};
  Prng rng(seed);
  return make_autoencoder(kind, arch, {0.37}, rng);
}

}  // namespace

TEST_CASE("mixture dataset: degenerate component gives its mean") {
  Prng rng(1);
  const auto x = generate_mixture_dataset(GaussianMixture::single({0.42, 0.61}, 1e-12), 1, rng);
  REQUIRE(x.shape() == std::vector<std::size_t>{1, 2});
  CHECK(std::abs(x[0] - 0.42) <= 1e-4);
  CHECK(std::abs(x[1] - 0.61) <= 1e-4);
  CHECK_THROWS_AS(generate_mixture_dataset(GaussianMixture::single({0.5}, 0.01), 0, rng), ArgumentError);
}

TEST_CASE("mixture dataset: component frequencies and range") {
  GaussianMixture gm;
  gm.dim = 1;
  gm.weights = {0.2, 0.8};
  gm.means = {{0.3}, {0.7}};
  gm.variances = {{0.0025}, {0.0025}};
  Prng rng(2);
  const std::size_t n = 100000;
  const auto x = generate_mixture_dataset(gm, n, rng);
  std::size_t first = 0;
  for (double v : x.data()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    if (v < 0.5) ++first;  // the components barely overlap at the midpoint
  }
  CHECK(std::abs(static_cast<double>(first) / n - 0.2) <= 0.01);
}

TEST_CASE("blobs: range, symmetry and centre of mass") {
  Prng rng(3);
  const auto blobs = generate_blobs8x8(10000, rng);
  REQUIRE(blobs.cols() == 64);
  for (double v : blobs.data()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  const Tensor centred = render_blob(3.5, 3.5);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < 64; ++i) if (centred[i] > centred[arg]) arg = i;
  const std::size_t r = arg / 8, c = arg % 8;
  CHECK((r == 3 || r == 4));
  CHECK((c == 3 || c == 4));

  const Tensor sums = column_sums(blobs);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 64; ++i) if (sums[i] > sums[best]) best = i;
  CHECK(best / 8 >= 2);
  CHECK(best / 8 <= 5);
  CHECK(best % 8 >= 2);
  CHECK(best % 8 <= 5);
}

TEST_CASE("IDX: handcrafted file") {
  TempDir dir;
  auto bytes = idx_header(0x00000803, 2, 2, 2);
  for (unsigned char b : {0, 255, 128, 64, 1, 2, 3, 4}) bytes.push_back(b);
  write_bytes(dir / "a.idx", bytes);
  std::size_t rows = 0, cols = 0;
  const Tensor x = load_idx_images(dir / "a.idx", &rows, &cols);
  CHECK(rows == 2);
  CHECK(cols == 2);
  REQUIRE(x.shape() == std::vector<std::size_t>{2, 4});
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 1.0);
  CHECK(x[2] == 128.0 / 255.0);
  CHECK(x[3] == 64.0 / 255.0);
  CHECK(x[7] == 4.0 / 255.0);
}

TEST_CASE("IDX: wrong magic and truncation") {
  TempDir dir;
  auto vec = idx_header(0x00000801, 4, 0, 0);
  vec.resize(8);
  write_bytes(dir / "v.idx", vec);
  CHECK_THROWS_AS(load_idx_images(dir / "v.idx"), FormatError);

  auto bytes = idx_header(0x00000803, 2, 2, 2);
  bytes.push_back(7);
  write_bytes(dir / "t.idx", bytes);
  try {
    load_idx_images(dir / "t.idx");
    FAIL("expected truncation");
  } catch (const TruncatedError& e) {
    CHECK(e.offset() == 17);
  }
  write_bytes(dir / "h.idx", std::vector<unsigned char>{0, 0, 8});
  CHECK_THROWS_AS(load_idx_images(dir / "h.idx"), TruncatedError);
  CHECK_THROWS_AS(load_idx_images(dir / "missing.idx"), IoError);
}

TEST_CASE("IDX: round trip") {
  TempDir dir;
  Tensor x({3, 6});
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>((i * 37) % 256) / 255.0;
  write_idx_images(x, 2, 3, dir / "r.idx");
  std::size_t rows = 0, cols = 0;
  CHECK(load_idx_images(dir / "r.idx", &rows, &cols) == x);
  CHECK(rows == 2);
  CHECK(cols == 3);
}

TEST_CASE("checkpoint: bitwise round trip for every kind") {
  TempDir dir;
  for (auto kind : {ModelKind::dae, ModelKind::dvae, ModelKind::daae}) {
    const auto m = model_of(kind, 4);
    save_checkpoint(m, dir / "m.daeb");
    const auto bytes = read_bytes(dir / "m.daeb");
    REQUIRE(bytes.size() > 8);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "DAEB");
    const auto loaded = load_checkpoint(dir / "m.daeb");
    CHECK(loaded == m);
    CHECK(serialize_checkpoint(loaded) == bytes);
  }
}

TEST_CASE("checkpoint: corruption is detected with distinct errors") {
  const auto bytes = serialize_checkpoint(model_of(ModelKind::daae, 5));

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(deserialize_checkpoint(bad_magic), FormatError);

  auto bad_version = bytes;
  bad_version[4] ^= 0xFF;
  CHECK_THROWS_AS(deserialize_checkpoint(bad_version), VersionError);

  for (std::size_t cut : {std::size_t{2}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    const std::vector<unsigned char> truncated(bytes.begin(), bytes.begin() + static_cast<long>(cut));
    CHECK_THROWS_AS(deserialize_checkpoint(truncated), TruncatedError);
  }

  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(deserialize_checkpoint(trailing), FormatError);

  // decoder input size (first size of the second network) no longer matches the latent size
  auto model = model_of(ModelKind::dae, 6);
  Prng rng(1);
  model.decoder = make_mlp({{3, 4, 3}, HiddenActivation::relu, 0.2, OutputActivation::sigmoid}, rng);
  CHECK_THROWS_AS(deserialize_checkpoint(serialize_checkpoint(model)), ShapeError);
}

TEST_CASE("PGM: saturated image and tiling geometry") {
  TempDir dir;
  Tensor ones({1, 4}, 1.0);
  write_pgm_grid(ones, 2, 2, 1, dir / "one.pgm");
  const auto bytes = read_bytes(dir / "one.pgm");
  const std::string header = "P5\n2 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 4);
  CHECK(std::string(bytes.begin(), bytes.begin() + static_cast<long>(header.size())) == header);
  for (std::size_t i = header.size(); i < bytes.size(); ++i) CHECK(bytes[i] == 255);

  const GrayImage single = read_pgm(dir / "one.pgm");
  CHECK(single.width == 2);
  CHECK(single.height == 2);

  Tensor five({5, 6}, 0.5);
  const auto tiled = tile_images(five, 2, 3, 2);
  CHECK(tiled.width == 2 * 3 + 1);
  CHECK(tiled.height == 3 * 2 + 2);
  CHECK(tiled.pixels[3] == 0);  // separator column
  CHECK(tiled.pixels[0] == 128);
  CHECK_THROWS_AS(tile_images(five, 2, 3, 0), ArgumentError);
}

TEST_CASE("PGM: round trip up to quantization") {
  TempDir dir;
  Prng rng(7);
  Tensor img = sample_uniform(rng, {1, 12}, -0.2, 1.2);
  write_pgm_grid(img, 3, 4, 1, dir / "q.pgm");
  const auto back = read_pgm(dir / "q.pgm");
  REQUIRE(back.pixels.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    const double clamped = std::clamp(img[i], 0.0, 1.0);
    CHECK(back.pixels[i] == static_cast<unsigned char>(std::lround(clamped * 255.0)));
  }
}

TEST_CASE("CSV output") {
  TempDir dir;
  write_series_csv(dir / "s.csv", "loss", {0.5, 0.25, 0.125});
  CHECK(read_text(dir / "s.csv") == "index,loss\n0,0.5\n1,0.25\n2,0.125\n");
  write_csv(dir / "t.csv", {"a", "b"}, {{1.0, -2.5}, {1e-300, 0.1}});
  CHECK(read_text(dir / "t.csv") == "a,b\n1,-2.5\n1e-300,0.1\n");
  CHECK_THROWS_AS(write_csv(dir / "u.csv", {"a", "b"}, {{1.0}}), ShapeError);
  CHECK_THROWS_AS(write_csv(dir / "no" / "such" / "dir.csv", {"a"}, {}), IoError);
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("config: parsing, comments and defaults") {
  const auto cfg = parse_run_config(
      "# experiment\n"
      "model = dvae\n"
      "loss=mse   # trailing comment\n"
      "\n"
      "sigma = 0.25\n"
      "hidden = 16, 8\n"
      "mixture_means = 0.3;0.7\n"
      "mixture_variances = 0.001;0.002\n"
      "mixture_weights = 0.25;0.75\n"
      "oracle_sigmas = 0.1,0.01\n");
  CHECK(cfg.model == ModelKind::dvae);
  CHECK(cfg.loss == LossKind::mse);
  CHECK(cfg.sigma == 0.25);
  CHECK(cfg.hidden == std::vector<std::size_t>{16, 8});
  CHECK(cfg.epochs == 30);
  CHECK(cfg.oracle_sigmas == std::vector<double>{0.1, 0.01});
  const auto gm = cfg.mixture();
  CHECK(gm.dim == 1);
  CHECK(gm.weights == std::vector<double>{0.25, 0.75});
  CHECK(gm.variances[1][0] == 0.002);
  CHECK(cfg.architecture(1).latent_dim == 2);
  CHECK(cfg.architecture(64).latent_dim == 8);
}

TEST_CASE("config: errors carry line numbers") {
  try {
    parse_run_config("model = dae\n\nfrobnicate = 3\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
  try {
    parse_run_config("epochs = many\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(parse_run_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("model = gan\n"), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/dae.cfg"), IoError);
}

TEST_CASE("config: overrides") {
  RunConfig cfg;
  apply_override(cfg, "epochs=3");
  apply_override(cfg, " seed = 99 ");
  CHECK(cfg.epochs == 3);
  CHECK(cfg.seed == 99);
  CHECK_THROWS_AS(apply_override(cfg, "epochs"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "nope=1"), ConfigError);
}
