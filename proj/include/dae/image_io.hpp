#pragma once

#include <cstddef>
#include <filesystem>

#include "dae/tensor.hpp"

namespace dae {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<unsigned char> pixels;  // row-major
};

/// Tiles `images` ([n x (height*width)]) row-major, `grid_cols` per row, with 1-pixel black
/// separators between tiles. Values are clamped to [0, 1]; pixel = round(value * 255).
GrayImage tile_images(const Tensor& images, std::size_t height, std::size_t width,
                      std::size_t grid_cols);

/// Binary P5 PGM, maxval 255.
void write_pgm(const GrayImage& image, const std::filesystem::path& path);
void write_pgm_grid(const Tensor& images, std::size_t height, std::size_t width,
                    std::size_t grid_cols, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

/// IDX unsigned-byte image file (magic 0x00000803, big-endian n, rows, cols).
/// Pixels are divided by 255; returns [n x (rows*cols)].
Tensor load_idx_images(const std::filesystem::path& path, std::size_t* rows = nullptr,
                       std::size_t* cols = nullptr);
/// Inverse of load_idx_images; values are clamped and rounded to bytes.
void write_idx_images(const Tensor& images, std::size_t rows, std::size_t cols,
                      const std::filesystem::path& path);

}  // namespace dae
