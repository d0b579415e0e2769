#include "dae/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dae/error.hpp"

namespace dae {

double Prng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Prng::uniform_index(std::uint64_t n) {
  if (n == 0) throw ArgumentError("uniform_index: n must be positive");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double Prng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Tensor sample_gaussian(Prng& rng, const Shape& shape, double sigma) {
  if (!(sigma >= 0.0)) throw ArgumentError("sample_gaussian: sigma must be non-negative");
  Tensor out(shape);
  if (sigma == 0.0) return out;
  for (double& v : out.data()) v = sigma * rng.normal();
  return out;
}

Tensor sample_uniform(Prng& rng, const Shape& shape, double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("sample_uniform: require lo < hi");
  Tensor out(shape);
  const double width = hi - lo;
  for (double& v : out.data()) {
    v = lo + width * rng.uniform01();
    if (v >= hi) v = std::nextafter(hi, lo);  // rounding guard for the half-open range
  }
  return out;
}

}  // namespace dae
