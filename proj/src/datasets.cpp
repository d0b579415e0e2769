#include "dae/datasets.hpp"

#include <algorithm>
#include <cmath>

#include "dae/error.hpp"

namespace dae {

Tensor generate_mixture_dataset(const GaussianMixture& gm, std::size_t n, Prng& rng) {
  gm.validate();
  if (n == 0) throw ArgumentError("generate_mixture_dataset: n must be positive");
  Tensor out({n, gm.dim});
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    std::size_t k = 0;
    double cumulative = gm.weights[0];
    while (u >= cumulative && k + 1 < gm.components()) cumulative += gm.weights[++k];
    for (std::size_t j = 0; j < gm.dim; ++j) {
      const double v = gm.means[k][j] + std::sqrt(gm.variances[k][j]) * rng.normal();
      out.at(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

Tensor render_blob(double center_row, double center_col) {
  Tensor img({kBlobSide * kBlobSide});
  const double denom = 2.0 * kBlobSpread * kBlobSpread;
  for (std::size_t r = 0; r < kBlobSide; ++r) {
    for (std::size_t c = 0; c < kBlobSide; ++c) {
      const double dr = static_cast<double>(r) - center_row;
      const double dc = static_cast<double>(c) - center_col;
      img[r * kBlobSide + c] = kBlobPeak * std::exp(-(dr * dr + dc * dc) / denom);
    }
  }
  return img;
}

Tensor generate_blobs8x8(std::size_t n, Prng& rng) {
  if (n == 0) throw ArgumentError("generate_blobs8x8: n must be positive");
  constexpr std::size_t pixels = kBlobSide * kBlobSide;
  Tensor out({n, pixels});
  for (std::size_t i = 0; i < n; ++i) {
    const double row = 2.0 + 3.0 * rng.uniform01();
    const double col = 2.0 + 3.0 * rng.uniform01();
    const Tensor blob = render_blob(row, col);
    for (std::size_t p = 0; p < pixels; ++p) {
      out.at(i, p) = std::clamp(blob[p] + kBlobNoiseSigma * rng.normal(), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace dae
