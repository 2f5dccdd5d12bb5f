#include <gtest/gtest.h>

#include "lipprint/config.hpp"
#include "test_util.hpp"

namespace lipprint {
namespace {

using testing::code_of;

TEST(KeyValueFile, ParsesAllValueKinds) {
  const KeyValueFile f = KeyValueFile::parse(
      "# header comment\n"
      "sigma = 1.5   # trailing\n"
      "flag = true\n"
      "name = \"a # not a comment\"\n"
      "[upper]\n"
      "11 = [1, 2, 3, 4]\n"
      "empty = []\n");
  EXPECT_EQ(f.number("sigma"), 1.5);
  EXPECT_TRUE(f.boolean("flag"));
  EXPECT_EQ(f.string("name"), "a # not a comment");
  EXPECT_EQ(f.array("upper.11"), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_TRUE(f.array("upper.empty").empty());
  EXPECT_FALSE(f.contains("11"));
}

TEST(KeyValueFile, Errors) {
  for (const char* bad : {"novalue\n", "x =\n", "= 3\n", "x = 1\nx = 2\n", "[open\n",
                          "x = [1, , 2]\n", "x = \"open\n", "x = abc\n", "[]\n"}) {
    EXPECT_EQ(code_of([&] { KeyValueFile::parse(bad); }), ErrorCode::kMalformedConfig) << bad;
  }
  const KeyValueFile f = KeyValueFile::parse("x = 1\n");
  EXPECT_EQ(code_of([&] { f.boolean("x"); }), ErrorCode::kMalformedConfig);
  EXPECT_EQ(code_of([&] { f.number("y"); }), ErrorCode::kMalformedConfig);
  EXPECT_EQ(code_of([] { KeyValueFile::load("/nonexistent.toml"); }), ErrorCode::kUnreadableFile);
}

TEST(PipelineConfigFile, OverridesDefaults) {
  const PipelineConfig c = parse_pipeline_config(KeyValueFile::parse(
      "sigma = 2\ncanny_low = 0.05\ncanny_high = 0.3\nsobel_threshold = 0.4\n"
      "exclusive_directions = false\nbridge_flanks = false\nsobel_source = \"canny\"\n"
      "min_component_px = 3\n"));
  EXPECT_EQ(c.sigma, 2.0);
  EXPECT_EQ(c.edges.canny_low, 0.05);
  EXPECT_EQ(c.edges.canny_high, 0.3);
  EXPECT_EQ(c.edges.sobel_threshold, 0.4);
  EXPECT_FALSE(c.edges.exclusive_directions);
  EXPECT_FALSE(c.edges.bridge_flanks);
  EXPECT_EQ(c.edges.sobel_source, SobelSource::kCanny);
  EXPECT_EQ(c.min_component_px, 3u);
  EXPECT_EQ(describe(c),
            "sigma=2 canny_low=0.05 canny_high=0.3 sobel_threshold=0.4 "
            "exclusive_directions=false bridge_flanks=false sobel_source=canny "
            "min_component_px=3");
}

TEST(PipelineConfigFile, EmptyFileGivesDefaults) {
  const PipelineConfig c = parse_pipeline_config(KeyValueFile::parse(""));
  EXPECT_EQ(describe(c), describe(PipelineConfig{}));
}

TEST(PipelineConfigFile, Rejections) {
  for (const char* bad : {"sigmaa = 1\n", "sigma = 0\n", "sobel_source = \"raw\"\n",
                          "min_component_px = 1.5\n", "canny_low = 0.5\ncanny_high = 0.2\n",
                          "extra_orientations = [25, 75]\n", "sigma = true\n"}) {
    EXPECT_EQ(code_of([&] { parse_pipeline_config(KeyValueFile::parse(bad)); }),
              ErrorCode::kMalformedConfig)
        << bad;
  }
}

}  // namespace
}  // namespace lipprint
