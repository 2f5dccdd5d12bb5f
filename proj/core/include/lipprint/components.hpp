#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lipprint/edges.hpp"

namespace lipprint {

/// Groove counts of one image region.
struct DirectionalCounts {
  std::size_t h_sobel = 0;
  std::size_t v_sobel = 0;
  std::size_t d1_sobel = 0;
  std::size_t d2_sobel = 0;
  std::size_t n_canny = 0;  // edge-pixel cardinality, not a component count

  std::size_t operator[](Direction d) const;
  bool operator==(const DirectionalCounts&) const = default;
};

/// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  std::uint32_t make_set();
  std::uint32_t find(std::uint32_t x);
  void unite(std::uint32_t a, std::uint32_t b);
  std::uint32_t size_of(std::uint32_t x) { return size_[find(x)]; }
  std::size_t set_count() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

/// 8-connected labels, two-pass. 0 is background; foreground labels are
/// 1..N in raster order of each component's first pixel.
struct Labeling {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> component_sizes;  // index = label - 1
};

Labeling label_components(const EdgeMap& map);

/// Number of 8-connected components with at least min_component_px pixels.
std::size_t count_components(const EdgeMap& map, std::size_t min_component_px = 1);

DirectionalCounts count_all(const DirectionalEdgeSets& sets,
                            std::size_t min_component_px = 1);

}  // namespace lipprint
