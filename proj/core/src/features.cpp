#include "lipprint/features.hpp"

#include <cmath>
#include <string>

#include "lipprint/error.hpp"
#include "lipprint/preprocess.hpp"

namespace lipprint {

void PipelineConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be > 0");
  }
  const auto in_unit = [](double r) { return r > 0.0 && r <= 1.0; };
  if (!in_unit(edges.canny_low) || !in_unit(edges.canny_high) ||
      !(edges.canny_low < edges.canny_high)) {
    throw Error(ErrorCode::kInvalidArgument,
                "canny ratios must satisfy 0 < low < high <= 1");
  }
  if (!in_unit(edges.sobel_threshold)) {
    throw Error(ErrorCode::kInvalidArgument, "sobel threshold must lie in (0, 1]");
  }
  if (min_component_px == 0) {
    throw Error(ErrorCode::kInvalidArgument, "min_component_px must be >= 1");
  }
  if (!extra_orientations_deg.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "extra groove orientations are not implemented");
  }
}

GrayImage preprocess_lip(const GrayImage& img, const PipelineConfig& config) {
  const GrayImage smoothed = gaussian_smooth(img, config.sigma);
  return apply_mask(smoothed, dichotomize(smoothed));
}

DirectionalCounts region_counts(const GrayImage& prepared, const PipelineConfig& config) {
  return count_all(detect_edges(prepared, config.edges), config.min_component_px);
}

DirectionalCounts lip_counts(const GrayImage& img, const PipelineConfig& config) {
  config.validate();
  return region_counts(preprocess_lip(img, config), config);
}

std::array<DirectionalCounts, 4> block_counts(const GrayImage& img,
                                              const PipelineConfig& config) {
  config.validate();
  const auto blocks = split_quadrants(pad_to_multiple_of_four(preprocess_lip(img, config)));
  std::array<DirectionalCounts, 4> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) out[b] = region_counts(blocks[b], config);
  return out;
}

std::array<double, 4> normalized_counts(const DirectionalCounts& counts) {
  if (counts.n_canny == 0) {
    throw Error(ErrorCode::kUnextractableSample,
                "no Canny edges found (blank print?)");
  }
  const auto n = static_cast<double>(counts.n_canny);
  return {counts.h_sobel / n, counts.v_sobel / n, counts.d1_sobel / n,
          counts.d2_sobel / n};
}

FastFeature extract_fast(const LipPrintPair& pair, const PipelineConfig& config) {
  FastFeature f;
  const GrayImage* lips[] = {&pair.upper, &pair.lower};
  for (std::size_t lip = 0; lip < 2; ++lip) {
    std::array<double, 4> norm;
    try {
      norm = normalized_counts(lip_counts(*lips[lip], config));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnextractableSample) throw;
      throw Error(e.code(), std::string(lip == 0 ? "upper" : "lower") +
                                " lip: " + e.what());
    }
    for (std::size_t k = 0; k < 4; ++k) f.values[4 * lip + k] = norm[k];
  }
  return f;
}

AccurateFeature extract_accurate(const LipPrintPair& pair, const PipelineConfig& config) {
  AccurateFeature f;
  const GrayImage* lips[] = {&pair.upper, &pair.lower};
  for (std::size_t lip = 0; lip < 2; ++lip) {
    const auto blocks = block_counts(*lips[lip], config);
    for (std::size_t row = 0; row < AccurateFeature::kRows; ++row) {
      for (std::size_t k = 0; k < 4; ++k) {
        f.values[row][4 * lip + k] = static_cast<double>(blocks[row][kDirections[k]]);
      }
    }
  }
  return f;
}

GrayImage pad_to_multiple_of_four(const GrayImage& img) {
  const int w = (img.width() + 3) / 4 * 4;
  const int h = (img.height() + 3) / 4 * 4;
  if (w == img.width() && h == img.height()) return img;
  GrayImage out(w, h, 255);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.at(x, y) = img.at(x, y);
  }
  return out;
}

std::array<GrayImage, 4> split_quadrants(const GrayImage& img) {
  if (img.width() % 2 != 0 || img.height() % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "quadrant split needs even sides");
  }
  const int hw = img.width() / 2;
  const int hh = img.height() / 2;
  return {crop(img, 0, 0, hw, hh), crop(img, hw, 0, hw, hh), crop(img, 0, hh, hw, hh),
          crop(img, hw, hh, hw, hh)};
}

}  // namespace lipprint
