#pragma once

#include <cstdint>
#include <vector>

#include "lipprint/image.hpp"

namespace lipprint {

/// Two-cluster split of an imprint into lip (dark powder) and background
/// (white sheet) pixels.
struct BinarizedImage {
  int width = 0;
  int height = 0;
  std::vector<bool> mask;  // true = lip-imprint pixel
  double foreground_intensity = 0.0;
  double background_intensity = 0.0;

  std::size_t foreground_count() const;
};

/// 1-D 2-means over the intensity histogram, seeded at the image minimum and
/// maximum. Stops once both centres move by less than half a grey level or
/// after 100 rounds. Pixels strictly closer to the darker centre are imprint;
/// equidistant pixels go to the background.
BinarizedImage dichotomize(const GrayImage& img);

/// Background pixels become 255, imprint pixels keep their intensity.
GrayImage apply_mask(const GrayImage& img, const BinarizedImage& bin);

}  // namespace lipprint
