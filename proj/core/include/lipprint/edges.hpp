#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "lipprint/image.hpp"

namespace lipprint {

/// Binary mask of edge pixels, row-major.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<bool> edges;

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), edges(static_cast<std::size_t>(w) * h) {}

  bool at(int x, int y) const { return edges[static_cast<std::size_t>(y) * width + x]; }
  void set(int x, int y, bool v = true) {
    edges[static_cast<std::size_t>(y) * width + x] = v;
  }
  std::size_t count() const;

  bool operator==(const EdgeMap&) const = default;
};

/// Groove orientations. Horizontal grooves run at 180 degrees, vertical at 90,
/// Diagonal1 at 45 and Diagonal2 at 135.
enum class Direction { kHorizontal = 0, kVertical = 1, kDiagonal1 = 2, kDiagonal2 = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::kHorizontal, Direction::kVertical, Direction::kDiagonal1,
    Direction::kDiagonal2};

std::string_view to_string(Direction d);

using Mask3x3 = std::array<std::array<int, 3>, 3>;

// mask[row][col], row 0 is the top of the neighbourhood. Applied as a
// correlation: response(x, y) = sum mask[j][i] * img(x + i - 1, y + j - 1).
inline constexpr Mask3x3 kMaskVertical = {{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
inline constexpr Mask3x3 kMaskHorizontal = {{{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}}};
inline constexpr Mask3x3 kMaskDiagonal1 = {{{0, 1, 2}, {-1, 0, 1}, {-2, -1, 0}}};
inline constexpr Mask3x3 kMaskDiagonal2 = {{{-2, -1, 0}, {-1, 0, 1}, {0, 1, 2}}};

constexpr int mask_sum(const Mask3x3& m) {
  int s = 0;
  for (const auto& row : m)
    for (int v : row) s += v;
  return s;
}

static_assert(mask_sum(kMaskVertical) == 0);
static_assert(mask_sum(kMaskHorizontal) == 0);
static_assert(mask_sum(kMaskDiagonal1) == 0);
static_assert(mask_sum(kMaskDiagonal2) == 0);

const Mask3x3& mask_for(Direction d);

struct AxisStep {
  int dx;
  int dy;
};

/// Unit step along which the direction's mask differentiates; a groove of that
/// direction crosses this axis.
AxisStep gradient_axis(Direction d);

/// Signed mask response, clamp-to-edge borders.
struct ResponseMap {
  int width = 0;
  int height = 0;
  std::vector<int> values;

  int at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  int max_abs() const;
};

ResponseMap mask_response(const GrayImage& img, Direction d);

enum class SobelSource { kSmoothed, kCanny };

struct EdgeConfig {
  double canny_low = 0.10;
  double canny_high = 0.25;
  double sobel_threshold = 0.25;
  // Each pixel joins only the direction(s) whose |response| is largest there.
  bool exclusive_directions = true;
  // Join the two opposite-sign flanks of a thin groove through its centre line,
  // so one groove yields one component instead of two.
  bool bridge_flanks = true;
  SobelSource sobel_source = SobelSource::kSmoothed;
};

struct DirectionalEdgeSets {
  EdgeMap h;
  EdgeMap v;
  EdgeMap d1;
  EdgeMap d2;
  EdgeMap canny;

  const EdgeMap& operator[](Direction d) const;
  EdgeMap& operator[](Direction d);
};

/// Full Canny without the smoothing stage: Sobel gradients, non-maximum
/// suppression over four angle bins, then hysteresis against thresholds
/// relative to the largest gradient magnitude. Requires
/// 0 < low_ratio < high_ratio <= 1.
EdgeMap canny(const GrayImage& img, double low_ratio, double high_ratio);

/// The four thresholded directional maps only; canny is left empty.
DirectionalEdgeSets directional_maps(const GrayImage& img, const EdgeConfig& config);

/// Directional maps plus the Canny map, as consumed by feature extraction.
DirectionalEdgeSets detect_edges(const GrayImage& img, const EdgeConfig& config);

/// detect_edges with default settings except the directional threshold.
DirectionalEdgeSets sobel_directional(const GrayImage& img, double threshold_ratio);

GrayImage edge_map_image(const EdgeMap& map);

}  // namespace lipprint
