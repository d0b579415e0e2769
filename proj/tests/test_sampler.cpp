#include <doctest.h>

#include <cmath>
#include <memory>
#include <string>

#include "dae/error.hpp"
#include "dae/mixture.hpp"
#include "dae/model.hpp"
#include "dae/oracle.hpp"
#include "dae/quadrature.hpp"
#include "dae/sampler.hpp"

using namespace dae;

namespace {

Tensor column(std::vector<double> v) {
  Tensor t({v.size(), 1});
  for (std::size_t i = 0; i < v.size(); ++i) t[i] = v[i];
  return t;
}

// Closed-form optimal reconstruction of a single Gaussian: contraction toward mu by s2/(s2+sigma2).
ReconstructionFn conjugate(double mu, double s, double sigma) {
  const double k = s * s / (s * s + sigma * sigma);
  return [=](const Tensor& x) {
    Tensor y(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = mu + (x[i] - mu) * k;
    return y;
  };
}

ReconstructionFn oracle_map(const GaussianMixture& gm, double sigma) {
  auto r = std::make_shared<OptimalReconstruction>(gm, sigma, QuadratureSpec{});
  return [r](const Tensor& x) {
    Tensor y(x.shape());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto out = (*r)(x.row(i));
      for (std::size_t j = 0; j < x.cols(); ++j) y.at(i, j) = out[j];
    }
    return y;
  };
}

GaussianMixture two_modes() { return GaussianMixture::equal_weights({{0.35}, {0.65}}, 0.0025); }

// Mean squared distance to the nearest mode centre over the last `last` recorded states.
double spread(const ChainTrace& trace, const GaussianMixture& gm, std::size_t last) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t k = trace.states.size() - last; k < trace.states.size(); ++k) {
    const Tensor& x = trace.states[k];
    for (std::size_t c = 0; c < x.rows(); ++c) {
      const double mu = gm.means[dominant_component(gm, x.row(c))][0];
      s += (x.at(c, 0) - mu) * (x.at(c, 0) - mu);
      ++n;
    }
  }
  return s / static_cast<double>(n);
}

}  // namespace

TEST_CASE("chain config validation") {
  ChainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.steps = 0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg.steps = 5;
  cfg.record_every = 6;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg.record_every = 1;
  cfg.inject_sigma = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("identity map keeps every state") {
  const Tensor x0 = column({0.1, 0.4, 0.9});
  ChainConfig cfg;
  cfg.steps = 5;
  const auto trace = run_chain([](const Tensor& x) { return x; }, x0, cfg, nullptr);
  REQUIRE(trace.states.size() == 6);
  for (const auto& s : trace.states) CHECK(s == x0);
  for (const auto& d : trace.displacements) for (double v : d) CHECK(v == 0.0);
}

TEST_CASE("single-Gaussian oracle contracts geometrically") {
  const double mu = 0.5, s = 0.1, sigma = 0.1;
  ChainConfig cfg;
  cfg.steps = 10;
  const Tensor x0 = column({0.9});
  const auto closed = run_chain(conjugate(mu, s, sigma), x0, cfg, nullptr);
  const auto quad = run_chain(oracle_map(GaussianMixture::single({mu}, s * s), sigma), x0, cfg, nullptr);
  for (std::size_t t = 0; t <= 10; ++t) {
    const double expected = mu + 0.4 * std::pow(0.5, static_cast<double>(t));
    CHECK(std::abs(closed.states[t][0] - expected) <= 1e-9);
    CHECK(std::abs(quad.states[t][0] - expected) <= 1e-9);
    if (t > 0) {
      CHECK(std::abs(quad.states[t][0] - mu) < std::abs(quad.states[t - 1][0] - mu));
      CHECK(quad.displacements[t - 1][0] == doctest::Approx(0.4 * std::pow(0.5, static_cast<double>(t))).epsilon(1e-8));
    }
  }
  CHECK(closed.states.back()[0] == doctest::Approx(0.50039).epsilon(1e-5));
}

TEST_CASE("recording bookkeeping") {
  ChainConfig cfg;
  cfg.steps = 1;
  const auto one = run_chain(conjugate(0.5, 0.1, 0.1), column({0.9}), cfg, nullptr);
  CHECK(one.recorded_steps == std::vector<std::size_t>{0, 1});
  CHECK(one.states.size() == 2);
  CHECK(one.displacements.size() == 1);

  cfg.steps = 10;
  cfg.record_every = 4;
  const auto sparse = run_chain(conjugate(0.5, 0.1, 0.1), column({0.9, 0.1}), cfg, nullptr);
  CHECK(sparse.recorded_steps == std::vector<std::size_t>{0, 4, 8, 10});
  CHECK(sparse.displacements.size() == 10);
  CHECK(sparse.chains() == 2);
  CHECK_FALSE(sparse.log_density.has_value());
}

TEST_CASE("chain errors") {
  ChainConfig cfg;
  cfg.steps = 5;
  cfg.inject_sigma = 0.5;
  CHECK_THROWS_AS(run_chain(conjugate(0.5, 0.1, 0.1), column({0.2}), cfg, nullptr), ArgumentError);

  cfg.inject_sigma = 0.0;
  int calls = 0;
  const ReconstructionFn blows_up = [&](const Tensor& x) {
    ++calls;
    Tensor y = x;
    if (calls == 3) y[0] = NAN;
    return y;
  };
  try {
    run_chain(blows_up, column({0.2}), cfg, nullptr);
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("step 3") != std::string::npos);
  }
}

TEST_CASE("sampling from noise") {
  Prng init(1);
  const auto model = make_autoencoder(ModelKind::dae, Architecture{}, {0.5}, init);
  ChainConfig cfg;
  cfg.steps = 3;
  Prng a(9), b(9);
  const auto ta = sample_from_noise(model, 64, cfg, a);
  const auto tb = sample_from_noise(model, 64, cfg, b);
  for (double v : ta.states.front().data()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  REQUIRE(ta.states.size() == tb.states.size());
  for (std::size_t i = 0; i < ta.states.size(); ++i) CHECK(ta.states[i] == tb.states[i]);
  CHECK(ta.displacements == tb.displacements);
  CHECK_THROWS_AS(sample_from_noise(model, 0, cfg, a), ArgumentError);
}

TEST_CASE("refining prior samples") {
  Prng init(2);
  const auto model = make_autoencoder(ModelKind::dvae, Architecture{}, {0.5}, init);
  ChainConfig cfg;
  cfg.steps = 1;
  Prng rng(3);
  const auto gm = two_modes();
  const auto trace = refine_from_prior(model, 32, cfg, rng, &gm);
  for (double v : trace.states.front().data()) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  CHECK(trace.states[1] == reconstruct(model, trace.states[0]));
  REQUIRE(trace.log_density.has_value());
  CHECK(trace.log_density->size() == 2);
  CHECK((*trace.log_density)[0].size() == 32);
}

TEST_CASE("diagnostics of a constant chain") {
  ChainConfig cfg;
  cfg.steps = 4;
  const auto trace = run_chain([](const Tensor& x) { return x; }, column({0.3, 0.7}), cfg, nullptr);
  const auto d = chain_diagnostics(trace, two_modes());
  CHECK(d.total_switches == 0);
  CHECK(d.chains_with_switch == 0);
  for (const auto& step : d.displacements) for (double v : step) CHECK(v == 0.0);
  CHECK(d.mode.front() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("log density rises along the oracle chain until the mode") {
  const auto gm = GaussianMixture::single({0.5}, 0.01);
  ChainConfig cfg;
  cfg.steps = 40;
  const auto trace = run_chain(conjugate(0.5, 0.1, 0.1), column({0.9, 0.12, 0.55}), cfg, nullptr, &gm);
  const auto d = chain_diagnostics(trace, gm);
  const double top = mixture_log_pdf(gm, std::vector<double>{0.5});
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t t = 0; t + 1 < d.log_density.size(); ++t) {
      if (d.log_density[t][c] < top - 1e-6) CHECK(d.log_density[t + 1][c] > d.log_density[t][c]);
    }
  }
  CHECK(d.log_density == *trace.log_density);
}

TEST_CASE("noise injection makes chains switch modes and spread") {
  const auto gm = two_modes();
  const auto r = oracle_map(gm, 0.1);
  ChainConfig cfg;
  cfg.steps = 50;
  Prng rng(21);
  const auto quiet = sample_from_noise(r, 1, 256, cfg, rng, &gm);
  cfg.inject_sigma = 0.5;
  const auto noisy = sample_from_noise(r, 1, 256, cfg, rng, &gm);
  const auto dq = chain_diagnostics(quiet, gm);
  const auto dn = chain_diagnostics(noisy, gm);
  CHECK(dn.chains_with_switch >= 1);
  CHECK(dq.total_switches < dn.total_switches);
  CHECK(spread(noisy, gm, 10) > spread(quiet, gm, 10));
}
