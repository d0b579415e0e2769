#pragma once

#include <cstddef>

#include "dae/mixture.hpp"
#include "dae/random.hpp"
#include "dae/tensor.hpp"

namespace dae {

/// Ancestral sampling (component by weight, then Gaussian), clipped to [0, 1]. [n x dim].
Tensor generate_mixture_dataset(const GaussianMixture& gm, std::size_t n, Prng& rng);

inline constexpr std::size_t kBlobSide = 8;
inline constexpr double kBlobPeak = 0.9;
inline constexpr double kBlobSpread = 1.2;      // px
inline constexpr double kBlobNoiseSigma = 0.1;  // pixel noise variance 0.01

/// Noiseless 8x8 blob centred at (row, col) in pixel coordinates (pixel i sits at i).
Tensor render_blob(double center_row, double center_col);

/// 8x8 Gaussian blobs with centre uniform in [2, 5]^2, plus pixel noise, clipped. [n x 64].
Tensor generate_blobs8x8(std::size_t n, Prng& rng);

}  // namespace dae
