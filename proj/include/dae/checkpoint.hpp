#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dae/model.hpp"

namespace dae {

inline constexpr char kCheckpointMagic[4] = {'D', 'A', 'E', 'B'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Binary layout, all integers u32 little-endian, all reals f64 little-endian:
///   "DAEB" | version | model kind | sigma | discriminator dropout | network count
///   per network: layer count n | n+1 sizes | hidden tag | leaky slope | output tag
///   then, per network in the same order, every layer's weight then bias values.
/// Networks are encoder, decoder, and the discriminator for daae models.
std::vector<unsigned char> serialize_checkpoint(const Autoencoder& model);
/// Throws FormatError (bad magic), VersionError, TruncatedError or ShapeError.
Autoencoder deserialize_checkpoint(const std::vector<unsigned char>& bytes);

void save_checkpoint(const Autoencoder& model, const std::filesystem::path& path);
Autoencoder load_checkpoint(const std::filesystem::path& path);

}  // namespace dae
