#include <gtest/gtest.h>

#include <random>

#include "lipprint/features.hpp"
#include "lipprint/synth.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace lipprint {
namespace {

GrayImage full_width_bars(int w, int h, std::initializer_list<int> rows) {
  GrayImage img(w, h, 255);
  for (int y : rows)
    for (int x = 0; x < w; ++x) img.at(x, y) = 0;
  return img;
}

bool all_zero(const AccurateFeature& f) {
  for (const auto& row : f.values)
    for (double v : row)
      if (v != 0.0) return false;
  return true;
}

TEST(NormalizedCounts, DividesByCannyCardinality) {
  const auto n = normalized_counts({10, 20, 5, 5, 200});
  EXPECT_DOUBLE_EQ(n[0], 0.05);
  EXPECT_DOUBLE_EQ(n[1], 0.10);
  EXPECT_DOUBLE_EQ(n[2], 0.025);
  EXPECT_DOUBLE_EQ(n[3], 0.025);
  EXPECT_EQ(testing::code_of([] { normalized_counts({1, 0, 0, 0, 0}); }),
            ErrorCode::kUnextractableSample);
}

TEST(ExtractFast, BlankPrintIsUnextractable) {
  const LipPrintPair blank{GrayImage(64, 64, 255), full_width_bars(64, 64, {20}), "x"};
  try {
    extract_fast(blank);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnextractableSample);
    EXPECT_NE(std::string(e.what()).find("upper"), std::string::npos);
  }
}

TEST(ExtractFast, IdenticalLipsGiveIdenticalHalves) {
  std::mt19937_64 rng(1);
  SynthSpec spec;
  spec.upper = testing::random_layout(rng, 3);
  const GrayImage img = generate_synthetic(spec, 3).upper;
  const FastFeature f = extract_fast({img, img, "s"});
  for (int i = 0; i < 4; ++i) EXPECT_EQ(f.values[i], f.values[i + 4]);
}

TEST(ExtractFast, HorizontalBarsDominate) {
  const GrayImage img = full_width_bars(96, 96, {12, 30, 47, 66, 80});
  const FastFeature f = extract_fast({img, img, "s"});
  EXPECT_GT(f.values[0], 0.0);
  for (int i = 1; i < 4; ++i) EXPECT_LT(f.values[i], f.values[0]);
  EXPECT_EQ(lip_counts(img, {}).h_sobel, 5u);
}

TEST(ExtractFast, Deterministic) {
  std::mt19937_64 rng(2);
  SynthSpec spec;
  spec.upper = testing::random_layout(rng, 3);
  spec.lower = testing::random_layout(rng, 3);
  spec.noise_level = 0.001;
  const LipPrintPair pair = generate_synthetic(spec, 17);
  EXPECT_EQ(extract_fast(pair), extract_fast(pair));
  EXPECT_EQ(extract_accurate(pair), extract_accurate(pair));
}

TEST(Pad, ToMultiplesOfFour) {
  const GrayImage a = pad_to_multiple_of_four(GrayImage(301, 299, 7));
  EXPECT_EQ(a.width(), 304);
  EXPECT_EQ(a.height(), 300);
  EXPECT_EQ(a.at(300, 298), 7);
  EXPECT_EQ(a.at(301, 0), 255);
  EXPECT_EQ(a.at(0, 299), 255);

  const GrayImage b(304, 300, 9);
  EXPECT_EQ(pad_to_multiple_of_four(b), b);

  const GrayImage c = pad_to_multiple_of_four(GrayImage(1, 1, 0));
  EXPECT_EQ(c.width(), 4);
  EXPECT_EQ(c.height(), 4);
  int white = 0;
  for (auto p : c.pixels()) white += p == 255;
  EXPECT_EQ(white, 15);
}

TEST(SplitQuadrants, RowMajorOrder) {
  GrayImage img(4, 2, std::vector<std::uint8_t>{1, 1, 2, 2, 3, 3, 4, 4});
  const auto q = split_quadrants(img);
  EXPECT_EQ(q[0].at(0, 0), 1);
  EXPECT_EQ(q[1].at(0, 0), 2);
  EXPECT_EQ(q[2].at(0, 0), 3);
  EXPECT_EQ(q[3].at(1, 0), 4);
  EXPECT_EQ(testing::code_of([] { split_quadrants(GrayImage(3, 2)); }),
            ErrorCode::kInvalidArgument);
}

TEST(ExtractAccurate, BlankPairIsAllZero) {
  EXPECT_TRUE(all_zero(extract_accurate({GrayImage(80, 60, 255), GrayImage(33, 17, 255), ""})));
}

TEST(ExtractAccurate, IdenticalTilesGiveIdenticalRows) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    SynthSpec spec;
    spec.upper[0] = testing::random_layout(rng, 3)[0];
    const GrayImage tile = crop(generate_synthetic(spec, trial).upper, 0, 0, 128, 128);
    GrayImage img(256, 256);
    for (int y = 0; y < 256; ++y)
      for (int x = 0; x < 256; ++x) img.at(x, y) = tile.at(x % 128, y % 128);
    const AccurateFeature f = extract_accurate({img, img, ""});
    for (int r = 1; r < 4; ++r)
      for (int c = 0; c < 4; ++c) EXPECT_EQ(f.values[r][c], f.values[0][c]);
  }
}

TEST(ExtractAccurate, GroovesInTopLeftOnly) {
  SynthSpec spec;
  spec.upper[0] = {2, 1, 1, 2};
  const AccurateFeature f = extract_accurate(generate_synthetic(spec, 8));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      if (r == 0 && c < 4) {
        EXPECT_GT(f.values[r][c], 0.0);
      } else {
        EXPECT_EQ(f.values[r][c], 0.0) << r << "," << c;
      }
    }
  }
}

TEST(ExtractAccurate, BlockSumsMatchWholeImageWhenConfined) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    SynthSpec spec;
    spec.upper = testing::random_layout(rng, 3);
    const GrayImage img = generate_synthetic(spec, 100 + trial).upper;
    const DirectionalCounts whole = lip_counts(img, {});
    const auto blocks = block_counts(img, {});
    for (Direction d : kDirections) {
      std::size_t sum = 0;
      for (const auto& b : blocks) sum += b[d];
      EXPECT_EQ(sum, whole[d]);
    }
  }
}

TEST(ExtractAccurate, CountsAreIntegral) {
  std::mt19937_64 rng(6);
  SynthSpec spec;
  spec.upper = testing::random_layout(rng, 3);
  spec.lower = testing::random_layout(rng, 3);
  spec.noise_level = 0.002;
  for (const auto& row : extract_accurate(generate_synthetic(spec, 1)).values)
    for (double v : row) EXPECT_EQ(v, std::floor(v));
}

// Gains on the groove contrast that the detectors see exactly.
TEST(Detection, ScaleFreeUnderContrastGain) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SynthSpec spec;
    spec.upper = testing::random_layout(rng, 3);
    spec.ink = 200;
    const GrayImage prepared = preprocess_lip(generate_synthetic(spec, trial).upper, {});
    for (int gain : {2, 4}) {
      GrayImage stronger = prepared;
      for (auto& p : stronger.pixels()) p = static_cast<std::uint8_t>(255 - gain * (255 - p));
      EXPECT_EQ(region_counts(stronger, {}), region_counts(prepared, {}));
    }
  }
}

TEST(PipelineConfig, Validation) {
  PipelineConfig c;
  c.sigma = 0;
  EXPECT_EQ(testing::code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = {};
  c.edges.canny_low = 0.5;
  EXPECT_EQ(testing::code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = {};
  c.min_component_px = 0;
  EXPECT_EQ(testing::code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = {};
  c.extra_orientations_deg = {25.0};
  EXPECT_EQ(testing::code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace lipprint
