#include "lipprint/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

constexpr int kMaxRounds = 100;
constexpr double kConvergence = 0.5;

bool is_foreground(int value, double dark, double bright) {
  return std::abs(value - dark) < std::abs(value - bright);
}

}  // namespace

std::size_t BinarizedImage::foreground_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

BinarizedImage dichotomize(const GrayImage& img) {
  std::array<std::uint64_t, 256> histogram{};
  for (std::uint8_t v : img.pixels()) ++histogram[v];

  int lo = 0;
  while (histogram[lo] == 0) ++lo;
  int hi = 255;
  while (histogram[hi] == 0) --hi;

  BinarizedImage out;
  out.width = img.width();
  out.height = img.height();
  out.mask.assign(img.size(), false);

  double dark = lo;
  double bright = hi;
  if (lo == hi) {
    out.foreground_intensity = dark;
    out.background_intensity = bright;
    return out;
  }

  for (int round = 0; round < kMaxRounds; ++round) {
    double dark_sum = 0.0, bright_sum = 0.0;
    std::uint64_t dark_n = 0, bright_n = 0;
    for (int v = lo; v <= hi; ++v) {
      if (histogram[v] == 0) continue;
      if (is_foreground(v, dark, bright)) {
        dark_sum += static_cast<double>(v) * histogram[v];
        dark_n += histogram[v];
      } else {
        bright_sum += static_cast<double>(v) * histogram[v];
        bright_n += histogram[v];
      }
    }
    // The extremes always stay in their own cluster, so neither is empty.
    const double next_dark = dark_sum / static_cast<double>(dark_n);
    const double next_bright = bright_sum / static_cast<double>(bright_n);
    const bool converged = std::abs(next_dark - dark) < kConvergence &&
                           std::abs(next_bright - bright) < kConvergence;
    dark = next_dark;
    bright = next_bright;
    if (converged) break;
  }

  out.foreground_intensity = dark;
  out.background_intensity = bright;
  const auto pixels = img.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    out.mask[i] = is_foreground(pixels[i], dark, bright);
  }
  return out;
}

GrayImage apply_mask(const GrayImage& img, const BinarizedImage& bin) {
  if (bin.width != img.width() || bin.height != img.height() ||
      bin.mask.size() != img.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask dimensions do not match image");
  }
  GrayImage out = img;
  auto pixels = out.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!bin.mask[i]) pixels[i] = 255;
  }
  return out;
}

}  // namespace lipprint
