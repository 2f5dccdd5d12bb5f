#pragma once

#include <array>
#include <cstdint>

#include "lipprint/config.hpp"
#include "lipprint/image.hpp"

namespace lipprint {

/// Groove counts per block (11, 12, 21, 22) and direction (H, V, D1, D2).
using GrooveLayout = std::array<std::array<int, 4>, 4>;

/// Recipe for a synthetic print pair: 1-px dark grooves on a white sheet.
struct SynthSpec {
  int size = 256;            // square canvas side, multiple of 4
  double noise_level = 0.0;  // salt-and-pepper probability per pixel
  std::uint8_t ink = 0;      // groove intensity
  GrooveLayout upper{};
  GrooveLayout lower{};
};

/// Horizontal grooves run along x, vertical along y, Diagonal1 along (1, 1)
/// and Diagonal2 along (1, -1) in image coordinates (y down). Grooves never
/// cross and keep clear of block borders, so each planted groove is one
/// component of its direction. All randomness comes from `seed`.
LipPrintPair generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

/// Keys: size, noise, ink, and `upper.<block>` / `lower.<block>` arrays of
/// four counts [H, V, D1, D2], block being one of 11, 12, 21, 22.
SynthSpec parse_synth_spec(const KeyValueFile& file);

}  // namespace lipprint
