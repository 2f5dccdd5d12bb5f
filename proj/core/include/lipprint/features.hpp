#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lipprint/components.hpp"
#include "lipprint/edges.hpp"
#include "lipprint/image.hpp"

namespace lipprint {

/// Every tunable of the extraction pipeline.
struct PipelineConfig {
  double sigma = 1.4;
  EdgeConfig edges;
  std::size_t min_component_px = 1;
  // Reserved for additional groove orientations; only the four built-in
  // directions are implemented, so this must stay empty.
  std::vector<double> extra_orientations_deg;

  void validate() const;
};

/// [H, V, D1, D2] of the upper lip then the lower lip, each divided by that
/// lip's Canny edge-pixel count.
struct FastFeature {
  std::array<double, 8> values{};
  bool operator==(const FastFeature&) const = default;
};

/// Rows are the blocks 11, 12, 21, 22 (top-left, top-right, bottom-left,
/// bottom-right); columns are [H, V, D1, D2] upper then lower. Raw counts.
struct AccurateFeature {
  static constexpr std::size_t kRows = 4;
  static constexpr std::size_t kCols = 8;
  std::array<std::array<double, kCols>, kRows> values{};
  bool operator==(const AccurateFeature&) const = default;
};

/// smooth -> dichotomize -> mask background to white.
GrayImage preprocess_lip(const GrayImage& img, const PipelineConfig& config);

DirectionalCounts region_counts(const GrayImage& prepared, const PipelineConfig& config);

/// Whole-lip counts (preprocessing included).
DirectionalCounts lip_counts(const GrayImage& img, const PipelineConfig& config);

/// Per-block counts in row-major block order (preprocessing included).
std::array<DirectionalCounts, 4> block_counts(const GrayImage& img,
                                              const PipelineConfig& config);

// Throws kUnextractableSample when n_canny is zero.
std::array<double, 4> normalized_counts(const DirectionalCounts& counts);

FastFeature extract_fast(const LipPrintPair& pair, const PipelineConfig& config = {});
AccurateFeature extract_accurate(const LipPrintPair& pair,
                                 const PipelineConfig& config = {});

/// Pads right and bottom with white up to the next multiples of four.
GrayImage pad_to_multiple_of_four(const GrayImage& img);

/// Quadrants of an image whose sides are even: 11, 12, 21, 22.
std::array<GrayImage, 4> split_quadrants(const GrayImage& img);

}  // namespace lipprint
