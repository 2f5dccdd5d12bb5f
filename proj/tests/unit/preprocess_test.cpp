#include <gtest/gtest.h>

#include <random>

#include "lipprint/preprocess.hpp"
#include "test_util.hpp"

namespace lipprint {
namespace {

GrayImage row(std::vector<std::uint8_t> v) {
  const int w = static_cast<int>(v.size());
  return GrayImage(w, 1, std::move(v));
}

std::vector<bool> mask_of(std::initializer_list<int> bits) {
  std::vector<bool> m;
  for (int b : bits) m.push_back(b != 0);
  return m;
}

TEST(Dichotomize, BlackAndWhiteSplitsExactly) {
  const BinarizedImage bin = dichotomize(row({0, 255, 255, 0, 255}));
  EXPECT_EQ(bin.mask, mask_of({1, 0, 0, 1, 0}));
  EXPECT_DOUBLE_EQ(bin.foreground_intensity, 0.0);
  EXPECT_DOUBLE_EQ(bin.background_intensity, 255.0);
}

TEST(Dichotomize, ConstantImageIsAllBackground) {
  const BinarizedImage bin = dichotomize(GrayImage(6, 4, 200));
  EXPECT_EQ(bin.foreground_count(), 0u);
  EXPECT_DOUBLE_EQ(bin.background_intensity, 200.0);
}

TEST(Dichotomize, TwoMeansWorkedExample) {
  const BinarizedImage bin = dichotomize(row({10, 12, 14, 240, 250}));
  EXPECT_DOUBLE_EQ(bin.foreground_intensity, 12.0);
  EXPECT_DOUBLE_EQ(bin.background_intensity, 245.0);
  EXPECT_EQ(bin.mask, mask_of({1, 1, 1, 0, 0}));
}

TEST(Dichotomize, EquidistantPixelsGoToBackground) {
  // Centres settle at 0 and 200; 100 is equidistant.
  const BinarizedImage bin = dichotomize(row({0, 0, 0, 100, 200, 200, 200}));
  EXPECT_FALSE(bin.mask[3]);
}

TEST(ApplyMask, Examples) {
  const GrayImage img = row({10, 12, 14, 240, 250});
  EXPECT_EQ(apply_mask(img, dichotomize(img)), row({10, 12, 14, 255, 255}));

  BinarizedImage all_bg{5, 1, std::vector<bool>(5, false), 0, 0};
  EXPECT_EQ(apply_mask(img, all_bg), row({255, 255, 255, 255, 255}));
  BinarizedImage all_fg{5, 1, std::vector<bool>(5, true), 0, 0};
  EXPECT_EQ(apply_mask(img, all_fg), img);
}

TEST(ApplyMask, DimensionMismatch) {
  BinarizedImage bin{2, 2, std::vector<bool>(4), 0, 0};
  EXPECT_EQ(testing::code_of([&] { apply_mask(GrayImage(3, 2), bin); }),
            ErrorCode::kDimensionMismatch);
}

class DichotomizeProperty : public ::testing::TestWithParam<int> {};

TEST_P(DichotomizeProperty, IdempotentAndOrdered) {
  std::mt19937_64 rng(GetParam());
  GrayImage img(24, 24);
  for (auto& p : img.pixels()) {
    p = static_cast<std::uint8_t>(rng() % 3 == 0 ? rng() % 90 : 150 + rng() % 106);
  }
  const BinarizedImage first = dichotomize(img);
  EXPECT_GE(first.background_intensity, first.foreground_intensity);
  const BinarizedImage second = dichotomize(apply_mask(img, first));
  EXPECT_EQ(second.mask, first.mask);
}

INSTANTIATE_TEST_SUITE_P(Seeds, DichotomizeProperty, ::testing::Range(0, 25));

}  // namespace
}  // namespace lipprint
