#include "lipprint/components.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace lipprint {

std::size_t DirectionalCounts::operator[](Direction d) const {
  switch (d) {
    case Direction::kHorizontal: return h_sobel;
    case Direction::kVertical: return v_sobel;
    case Direction::kDiagonal1: return d1_sobel;
    case Direction::kDiagonal2: return d2_sobel;
  }
  return 0;
}

std::uint32_t UnionFind::make_set() {
  const auto id = static_cast<std::uint32_t>(parent_.size());
  parent_.push_back(id);
  size_.push_back(1);
  return id;
}

std::uint32_t UnionFind::find(std::uint32_t x) {
  std::uint32_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) x = std::exchange(parent_[x], root);
  return root;
}

void UnionFind::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
}

Labeling label_components(const EdgeMap& map) {
  const int w = map.width;
  const int h = map.height;
  Labeling out{w, h, std::vector<std::uint32_t>(map.edges.size(), 0), {}};

  // Provisional labels are 1-based; set id = label - 1.
  UnionFind sets;
  auto label_at = [&](int x, int y) -> std::uint32_t {
    if (x < 0 || y < 0 || x >= w) return 0;
    return out.labels[static_cast<std::size_t>(y) * w + x];
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!map.at(x, y)) continue;
      // Already-visited 8-neighbours: W, NW, N, NE.
      const std::uint32_t neighbours[] = {label_at(x - 1, y), label_at(x - 1, y - 1),
                                          label_at(x, y - 1), label_at(x + 1, y - 1)};
      std::uint32_t label = 0;
      for (std::uint32_t n : neighbours) {
        if (n == 0) continue;
        if (label == 0) {
          label = n;
        } else if (n != label) {
          sets.unite(label - 1, n - 1);
        }
      }
      if (label == 0) label = sets.make_set() + 1;
      out.labels[static_cast<std::size_t>(y) * w + x] = label;
    }
  }

  // Second pass: compact root ids into 1..N in raster order.
  std::vector<std::uint32_t> root_to_final(sets.set_count(), 0);
  for (std::uint32_t& label : out.labels) {
    if (label == 0) continue;
    const std::uint32_t root = sets.find(label - 1);
    if (root_to_final[root] == 0) {
      out.component_sizes.push_back(0);
      root_to_final[root] = static_cast<std::uint32_t>(out.component_sizes.size());
    }
    label = root_to_final[root];
    ++out.component_sizes[label - 1];
  }
  return out;
}

std::size_t count_components(const EdgeMap& map, std::size_t min_component_px) {
  const Labeling labeling = label_components(map);
  if (min_component_px <= 1) return labeling.component_sizes.size();
  return static_cast<std::size_t>(
      std::count_if(labeling.component_sizes.begin(), labeling.component_sizes.end(),
                    [&](std::size_t s) { return s >= min_component_px; }));
}

DirectionalCounts count_all(const DirectionalEdgeSets& sets,
                            std::size_t min_component_px) {
  DirectionalCounts counts;
  counts.h_sobel = count_components(sets.h, min_component_px);
  counts.v_sobel = count_components(sets.v, min_component_px);
  counts.d1_sobel = count_components(sets.d1, min_component_px);
  counts.d2_sobel = count_components(sets.d2, min_component_px);
  counts.n_canny = sets.canny.count();
  return counts;
}

}  // namespace lipprint
