#include "lipprint/synth.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

constexpr int kCellMargin = 8;     // clearance to any block or cell border
constexpr int kMinPitch = 10;      // between parallel horizontal/vertical grooves
constexpr int kMinDiagPitch = 14;  // step in x - y between diagonal grooves
constexpr int kMinLength = 16;

// Same sequence on every platform: no std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  int between(int lo, int hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct Cell {
  int x0, y0, side;  // inner square after margins
};

[[noreturn]] void too_small(const std::string& what) {
  throw Error(ErrorCode::kCanvasTooSmall, what);
}

void draw_parallel(GrayImage& img, const Cell& cell, int count, bool horizontal,
                   std::uint8_t ink, Rng& rng) {
  if (count == 0) return;
  const int slot = cell.side / count;
  if (slot < kMinPitch) {
    too_small(std::to_string(count) + " parallel grooves need a cell side of " +
              std::to_string(count * kMinPitch + 2 * kCellMargin) + " px");
  }
  for (int i = 0; i < count; ++i) {
    const int across = i * slot + rng.between(0, slot - kMinPitch);
    const int length = rng.between(std::max(kMinLength, cell.side / 2), cell.side);
    const int start = rng.between(0, cell.side - length);
    for (int t = start; t < start + length; ++t) {
      if (horizontal) {
        img.at(cell.x0 + t, cell.y0 + across) = ink;
      } else {
        img.at(cell.x0 + across, cell.y0 + t) = ink;
      }
    }
  }
}

// Diagonal1 runs along (1, 1); Diagonal2 is its mirror image in y.
void draw_diagonal(GrayImage& img, const Cell& cell, int count, bool mirrored,
                   std::uint8_t ink, Rng& rng) {
  if (count == 0) return;
  const int reach = cell.side - kMinLength;
  const int slot = reach > 0 ? 2 * reach / count : 0;
  if (slot < kMinDiagPitch) {
    too_small(std::to_string(count) + " diagonal grooves do not fit in a " +
              std::to_string(cell.side + 2 * kCellMargin) + " px cell");
  }
  for (int i = 0; i < count; ++i) {
    const int c = -reach + i * slot + rng.between(0, slot - kMinDiagPitch);
    const int available = cell.side - std::abs(c);
    const int length = rng.between(std::max(kMinLength, available / 2), available);
    const int start = rng.between(0, available - length);
    const int u0 = c >= 0 ? c : 0;
    const int v0 = c >= 0 ? 0 : -c;
    for (int t = start; t < start + length; ++t) {
      const int u = u0 + t;
      const int v = v0 + t;
      const int y = mirrored ? cell.side - 1 - v : v;
      img.at(cell.x0 + u, cell.y0 + y) = ink;
    }
  }
}

GrayImage draw_lip(const SynthSpec& spec, const GrooveLayout& layout, Rng& rng) {
  GrayImage img(spec.size, spec.size, 255);
  const int block = spec.size / 2;
  for (int b = 0; b < 4; ++b) {
    const int bx = (b % 2) * block;
    const int by = (b / 2) * block;
    const auto& counts = layout[b];
    const int present = static_cast<int>(
        std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
    if (present == 0) continue;

    // One orientation uses the whole block; otherwise each direction gets a
    // fixed sub-cell so grooves of different orientations never cross.
    for (int d = 0; d < 4; ++d) {
      if (counts[d] == 0) continue;
      int x = bx, y = by, side = block;
      if (present > 1) {
        side = block / 2;
        x += (d % 2) * side;
        y += (d / 2) * side;
      }
      const Cell cell{x + kCellMargin, y + kCellMargin, side - 2 * kCellMargin};
      if (cell.side < kMinLength) too_small("canvas too small for groove cells");
      switch (d) {
        case 0: draw_parallel(img, cell, counts[d], true, spec.ink, rng); break;
        case 1: draw_parallel(img, cell, counts[d], false, spec.ink, rng); break;
        case 2: draw_diagonal(img, cell, counts[d], false, spec.ink, rng); break;
        case 3: draw_diagonal(img, cell, counts[d], true, spec.ink, rng); break;
      }
    }
  }

  if (spec.noise_level > 0.0) {
    for (auto& px : img.pixels()) {
      if (rng.unit() < spec.noise_level) px = rng.unit() < 0.5 ? 0 : 255;
    }
  }
  return img;
}

void check_spec(const SynthSpec& spec) {
  if (spec.size < 64 || spec.size % 4 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "canvas size must be a multiple of 4 and >= 64");
  }
  if (!(spec.noise_level >= 0.0 && spec.noise_level <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise level must lie in [0, 1]");
  }
  for (const auto* layout : {&spec.upper, &spec.lower}) {
    for (const auto& block : *layout) {
      for (int c : block) {
        if (c < 0) throw Error(ErrorCode::kInvalidArgument, "groove counts must be >= 0");
      }
    }
  }
}

}  // namespace

LipPrintPair generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  Rng rng(seed);
  GrayImage upper = draw_lip(spec, spec.upper, rng);
  GrayImage lower = draw_lip(spec, spec.lower, rng);
  return {std::move(upper), std::move(lower), {}};
}

SynthSpec parse_synth_spec(const KeyValueFile& file) {
  static constexpr const char* kBlocks[] = {"11", "12", "21", "22"};
  SynthSpec spec;
  std::size_t used = 0;
  if (file.contains("size")) {
    spec.size = static_cast<int>(file.number("size"));
    ++used;
  }
  if (file.contains("noise")) {
    spec.noise_level = file.number("noise");
    ++used;
  }
  if (file.contains("ink")) {
    const double ink = file.number("ink");
    if (ink < 0 || ink > 255) throw Error(ErrorCode::kMalformedConfig, "ink must be 0..255");
    spec.ink = static_cast<std::uint8_t>(ink);
    ++used;
  }
  for (const char* lip : {"upper", "lower"}) {
    GrooveLayout& layout = std::string(lip) == "upper" ? spec.upper : spec.lower;
    for (int b = 0; b < 4; ++b) {
      const std::string key = std::string(lip) + "." + kBlocks[b];
      if (!file.contains(key)) continue;
      ++used;
      const auto& counts = file.array(key);
      if (counts.size() != 4) {
        throw Error(ErrorCode::kMalformedConfig, key + " needs four counts [H, V, D1, D2]");
      }
      for (int d = 0; d < 4; ++d) {
        if (counts[d] < 0 || counts[d] != static_cast<int>(counts[d])) {
          throw Error(ErrorCode::kMalformedConfig, key + " counts must be integers >= 0");
        }
        layout[b][d] = static_cast<int>(counts[d]);
      }
    }
  }
  if (used != file.values().size()) {
    throw Error(ErrorCode::kMalformedConfig, "synthetic spec has unknown keys");
  }
  check_spec(spec);
  return spec;
}

}  // namespace lipprint
