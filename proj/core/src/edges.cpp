#include "lipprint/edges.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

std::size_t offset(int x, int y, int width) {
  return static_cast<std::size_t>(y) * width + x;
}

void check_ratio(double r, const char* name) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must lie in (0, 1]");
  }
}

int sign(int v) { return (v > 0) - (v < 0); }

EdgeMap threshold_direction(const std::array<ResponseMap, 4>& responses,
                            std::size_t d, const EdgeConfig& config) {
  const ResponseMap& r = responses[d];
  EdgeMap map(r.width, r.height);
  const int peak = r.max_abs();
  if (peak == 0) return map;
  const double cut = config.sobel_threshold * peak;

  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const int mag = std::abs(r.values[i]);
    if (mag == 0 || mag < cut) continue;
    if (config.exclusive_directions) {
      bool dominant = true;
      for (std::size_t e = 0; e < responses.size() && dominant; ++e) {
        dominant = std::abs(responses[e].values[i]) <= mag;
      }
      if (!dominant) continue;
    }
    map.edges[i] = true;
  }

  if (!config.bridge_flanks) return map;

  const AxisStep axis = gradient_axis(kDirections[d]);
  EdgeMap bridged = map;
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      if (map.at(x, y)) continue;
      const int xa = x - axis.dx, ya = y - axis.dy;
      const int xb = x + axis.dx, yb = y + axis.dy;
      if (xa < 0 || ya < 0 || xb < 0 || yb < 0 || xa >= r.width ||
          xb >= r.width || ya >= r.height || yb >= r.height) {
        continue;
      }
      if (map.at(xa, ya) && map.at(xb, yb) &&
          sign(r.at(xa, ya)) == -sign(r.at(xb, yb))) {
        bridged.set(x, y);
      }
    }
  }
  return bridged;
}

}  // namespace

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), true));
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return "H";
    case Direction::kVertical: return "V";
    case Direction::kDiagonal1: return "D1";
    case Direction::kDiagonal2: return "D2";
  }
  return "?";
}

const Mask3x3& mask_for(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return kMaskHorizontal;
    case Direction::kVertical: return kMaskVertical;
    case Direction::kDiagonal1: return kMaskDiagonal1;
    case Direction::kDiagonal2: return kMaskDiagonal2;
  }
  return kMaskHorizontal;
}

AxisStep gradient_axis(Direction d) {
  switch (d) {
    case Direction::kHorizontal: return {0, 1};
    case Direction::kVertical: return {1, 0};
    case Direction::kDiagonal1: return {1, -1};
    case Direction::kDiagonal2: return {1, 1};
  }
  return {0, 0};
}

int ResponseMap::max_abs() const {
  int m = 0;
  for (int v : values) m = std::max(m, std::abs(v));
  return m;
}

ResponseMap mask_response(const GrayImage& img, Direction d) {
  const Mask3x3& mask = mask_for(d);
  const int w = img.width();
  const int h = img.height();
  ResponseMap out{w, h, std::vector<int>(static_cast<std::size_t>(w) * h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int acc = 0;
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
          if (mask[j][i] != 0) acc += mask[j][i] * img.clamped(x + i - 1, y + j - 1);
        }
      }
      out.values[offset(x, y, w)] = acc;
    }
  }
  return out;
}

const EdgeMap& DirectionalEdgeSets::operator[](Direction d) const {
  switch (d) {
    case Direction::kHorizontal: return h;
    case Direction::kVertical: return v;
    case Direction::kDiagonal1: return d1;
    case Direction::kDiagonal2: return d2;
  }
  return h;
}

EdgeMap& DirectionalEdgeSets::operator[](Direction d) {
  return const_cast<EdgeMap&>(std::as_const(*this)[d]);
}

EdgeMap canny(const GrayImage& img, double low_ratio, double high_ratio) {
  check_ratio(low_ratio, "canny low ratio");
  check_ratio(high_ratio, "canny high ratio");
  if (!(low_ratio < high_ratio)) {
    throw Error(ErrorCode::kInvalidArgument,
                "canny low ratio must be below the high ratio");
  }

  const int w = img.width();
  const int h = img.height();
  const ResponseMap gx = mask_response(img, Direction::kVertical);
  const ResponseMap gy = mask_response(img, Direction::kHorizontal);

  std::vector<double> magnitude(img.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    magnitude[i] = std::hypot(gx.values[i], gy.values[i]);
    peak = std::max(peak, magnitude[i]);
  }
  EdgeMap out(w, h);
  if (peak == 0.0) return out;

  auto mag_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return magnitude[offset(x, y, w)];
  };

  // Thinning. A pixel survives if it is >= its predecessor and strictly > its
  // successor along the gradient, so a plateau two pixels wide keeps one.
  std::vector<double> thin(img.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = magnitude[offset(x, y, w)];
      if (m == 0.0) continue;
      double angle = std::atan2(static_cast<double>(gy.at(x, y)),
                                static_cast<double>(gx.at(x, y))) *
                     180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      int dx = 1, dy = 0;
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1; dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0; dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1; dy = 1;
      }
      if (m >= mag_at(x - dx, y - dy) && m > mag_at(x + dx, y + dy)) {
        thin[offset(x, y, w)] = m;
      }
    }
  }

  const double high = high_ratio * peak;
  const double low = low_ratio * peak;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (thin[i] > 0.0 && thin[i] >= high) {
      out.edges[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w);
    const int y = static_cast<int>(i / w);
    for (int ny = y - 1; ny <= y + 1; ++ny) {
      for (int nx = x - 1; nx <= x + 1; ++nx) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t n = offset(nx, ny, w);
        if (!out.edges[n] && thin[n] > 0.0 && thin[n] >= low) {
          out.edges[n] = true;
          stack.push_back(n);
        }
      }
    }
  }
  return out;
}

DirectionalEdgeSets directional_maps(const GrayImage& img, const EdgeConfig& config) {
  check_ratio(config.sobel_threshold, "sobel threshold ratio");

  std::array<ResponseMap, 4> responses;
  for (std::size_t d = 0; d < kDirections.size(); ++d) {
    responses[d] = mask_response(img, kDirections[d]);
  }
  DirectionalEdgeSets sets;
  for (std::size_t d = 0; d < kDirections.size(); ++d) {
    sets[kDirections[d]] = threshold_direction(responses, d, config);
  }
  sets.canny = EdgeMap(img.width(), img.height());
  return sets;
}

DirectionalEdgeSets detect_edges(const GrayImage& img, const EdgeConfig& config) {
  EdgeMap canny_map = canny(img, config.canny_low, config.canny_high);
  DirectionalEdgeSets sets;
  if (config.sobel_source == SobelSource::kCanny) {
    sets = directional_maps(edge_map_image(canny_map), config);
  } else {
    sets = directional_maps(img, config);
  }
  sets.canny = std::move(canny_map);
  return sets;
}

DirectionalEdgeSets sobel_directional(const GrayImage& img, double threshold_ratio) {
  EdgeConfig config;
  config.sobel_threshold = threshold_ratio;
  return detect_edges(img, config);
}

GrayImage edge_map_image(const EdgeMap& map) {
  GrayImage out(map.width, map.height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < map.edges.size(); ++i) px[i] = map.edges[i] ? 255 : 0;
  return out;
}

}  // namespace lipprint
