#include "dae/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cmath>
#include <string>

#include "dae/error.hpp"
#include "file_bytes.hpp"

namespace dae {

namespace {

unsigned char to_byte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::uint32_t read_be32(const std::vector<unsigned char>& b, std::size_t offset) {
  if (offset + 4 > b.size()) throw TruncatedError("IDX header truncated", b.size());
  return (std::uint32_t{b[offset]} << 24) | (std::uint32_t{b[offset + 1]} << 16) |
         (std::uint32_t{b[offset + 2]} << 8) | std::uint32_t{b[offset + 3]};
}

void append_be32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) b.push_back(static_cast<unsigned char>(v >> shift));
}

}  // namespace

GrayImage tile_images(const Tensor& images, std::size_t height, std::size_t width,
                      std::size_t grid_cols) {
  if (grid_cols < 1) throw ArgumentError("tile_images: grid_cols must be >= 1");
  if (images.rank() != 2 || images.cols() != height * width || images.rows() == 0) {
    throw ShapeError("tile_images: expected [n x " + std::to_string(height * width) + "], got " +
                     shape_to_string(images.shape()));
  }
  const std::size_t n = images.rows();
  const std::size_t cols = std::min(grid_cols, n);
  const std::size_t rows = (n + cols - 1) / cols;
  GrayImage out;
  out.width = cols * width + (cols - 1);
  out.height = rows * height + (rows - 1);
  out.pixels.assign(out.width * out.height, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t top = (i / cols) * (height + 1);
    const std::size_t left = (i % cols) * (width + 1);
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t c = 0; c < width; ++c) {
        out.pixels[(top + r) * out.width + left + c] = to_byte(images.at(i, r * width + c));
      }
    }
  }
  return out;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
  detail::write_file_bytes(path, bytes);
}

void write_pgm_grid(const Tensor& images, std::size_t height, std::size_t width,
                    std::size_t grid_cols, const std::filesystem::path& path) {
  write_pgm(tile_images(images, height, width, grid_cols), path);
}

GrayImage read_pgm(const std::filesystem::path& path) {
  const auto bytes = detail::read_file_bytes(path);
  std::size_t pos = 0;
  auto next_token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
    if (start == pos) throw TruncatedError("PGM header truncated", pos);
    return std::string(bytes.begin() + static_cast<long>(start),
                       bytes.begin() + static_cast<long>(pos));
  };
  if (next_token() != "P5") throw FormatError("not a binary PGM (P5)", 0);
  GrayImage img;
  try {
    img.width = std::stoul(next_token());
    img.height = std::stoul(next_token());
    if (std::stoul(next_token()) != 255) throw FormatError("PGM maxval must be 255", pos);
  } catch (const std::logic_error&) {
    throw FormatError("malformed PGM header", pos);
  }
  ++pos;  // single whitespace after maxval
  const std::size_t count = img.width * img.height;
  if (pos + count > bytes.size()) throw TruncatedError("PGM pixel data truncated", bytes.size());
  img.pixels.assign(bytes.begin() + static_cast<long>(pos),
                    bytes.begin() + static_cast<long>(pos + count));
  return img;
}

Tensor load_idx_images(const std::filesystem::path& path, std::size_t* rows_out,
                       std::size_t* cols_out) {
  const auto bytes = detail::read_file_bytes(path);
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != 0x00000803u) {
    throw FormatError("IDX magic " + std::to_string(magic) + " is not an unsigned-byte image file",
                      0);
  }
  const std::size_t n = read_be32(bytes, 4);
  const std::size_t rows = read_be32(bytes, 8);
  const std::size_t cols = read_be32(bytes, 12);
  const std::size_t pixels = rows * cols;
  constexpr std::size_t header = 16;
  if (header + n * pixels > bytes.size()) {
    throw TruncatedError("IDX pixel data truncated: expected " + std::to_string(n * pixels) +
                             " bytes",
                         bytes.size());
  }
  Tensor out({n, pixels});
  for (std::size_t i = 0; i < n * pixels; ++i) out[i] = bytes[header + i] / 255.0;
  if (rows_out) *rows_out = rows;
  if (cols_out) *cols_out = cols;
  return out;
}

void write_idx_images(const Tensor& images, std::size_t rows, std::size_t cols,
                      const std::filesystem::path& path) {
  if (images.rank() != 2 || images.cols() != rows * cols) {
    throw ShapeError("write_idx_images: expected [n x " + std::to_string(rows * cols) + "]");
  }
  std::vector<unsigned char> bytes;
  append_be32(bytes, 0x00000803u);
  append_be32(bytes, static_cast<std::uint32_t>(images.rows()));
  append_be32(bytes, static_cast<std::uint32_t>(rows));
  append_be32(bytes, static_cast<std::uint32_t>(cols));
  for (double v : images.data()) bytes.push_back(to_byte(v));
  detail::write_file_bytes(path, bytes);
}

}  // namespace dae
