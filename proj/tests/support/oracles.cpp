#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace lipprint::testing {

namespace fs = std::filesystem;

namespace {

void fill(const EdgeMap& map, std::vector<bool>& seen, int x, int y) {
  if (x < 0 || y < 0 || x >= map.width || y >= map.height) return;
  const std::size_t i = static_cast<std::size_t>(y) * map.width + x;
  if (seen[i] || !map.edges[i]) return;
  seen[i] = true;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (dx != 0 || dy != 0) fill(map, seen, x + dx, y + dy);
}

int px(const GrayImage& img, int x, int y) {
  x = std::clamp(x, 0, img.width() - 1);
  y = std::clamp(y, 0, img.height() - 1);
  return img.at(x, y);
}

}  // namespace

std::size_t flood_fill_count(const EdgeMap& map) {
  std::vector<bool> seen(map.edges.size());
  std::size_t n = 0;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * map.width + x;
      if (map.edges[i] && !seen[i]) {
        ++n;
        fill(map, seen, x, y);
      }
    }
  }
  return n;
}

std::vector<std::vector<double>> gaussian_kernel_2d(double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<std::vector<double>> k(2 * r + 1, std::vector<double>(2 * r + 1));
  double total = 0.0;
  for (int j = -r; j <= r; ++j) {
    for (int i = -r; i <= r; ++i) {
      k[j + r][i + r] = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
      total += k[j + r][i + r];
    }
  }
  for (auto& row : k)
    for (double& v : row) v /= total;
  return k;
}

GrayImage brute_force_smooth(const GrayImage& img, double sigma) {
  const auto k = gaussian_kernel_2d(sigma);
  const int r = static_cast<int>(k.size() / 2);
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = 0.0;
      for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i) acc += k[j + r][i + r] * px(img, x + i, y + j);
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
    }
  }
  return out;
}

EdgeMap reference_canny(const GrayImage& img, double low_ratio, double high_ratio) {
  const int w = img.width(), h = img.height();
  std::vector<int> gx(img.size()), gy(img.size());
  std::vector<double> mag(img.size());
  double peak = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = (px(img, x + 1, y - 1) + 2 * px(img, x + 1, y) + px(img, x + 1, y + 1)) -
              (px(img, x - 1, y - 1) + 2 * px(img, x - 1, y) + px(img, x - 1, y + 1));
      gy[i] = (px(img, x - 1, y + 1) + 2 * px(img, x, y + 1) + px(img, x + 1, y + 1)) -
              (px(img, x - 1, y - 1) + 2 * px(img, x, y - 1) + px(img, x + 1, y - 1));
      mag[i] = std::sqrt(static_cast<double>(gx[i]) * gx[i] + static_cast<double>(gy[i]) * gy[i]);
      peak = std::max(peak, mag[i]);
    }
  }
  EdgeMap out(w, h);
  if (peak == 0.0) return out;

  auto m_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };
  const double t = std::tan(22.5 * 3.14159265358979323846 / 180.0);
  std::vector<double> thin(img.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (mag[i] == 0.0) continue;
      // Fold the gradient into the upper half plane, then bin by slope.
      int ax = gx[i], ay = gy[i];
      if (ay < 0 || (ay == 0 && ax < 0)) {
        ax = -ax;
        ay = -ay;
      }
      int dx, dy;
      if (ay <= t * std::abs(ax)) {
        dx = 1; dy = 0;  // near 0 or 180 degrees
      } else if (ay >= std::abs(ax) / t) {
        dx = 0; dy = 1;
      } else if (ax > 0) {
        dx = 1; dy = 1;
      } else {
        dx = -1; dy = 1;
      }
      if (mag[i] >= m_at(x - dx, y - dy) && mag[i] > m_at(x + dx, y + dy)) thin[i] = mag[i];
    }
  }

  const double high = high_ratio * peak, low = low_ratio * peak;
  for (std::size_t i = 0; i < thin.size(); ++i) out.edges[i] = thin[i] > 0.0 && thin[i] >= high;
  for (bool changed = true; changed;) {
    changed = false;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (out.edges[i] || !(thin[i] > 0.0 && thin[i] >= low)) continue;
        for (int ny = std::max(0, y - 1); ny <= std::min(h - 1, y + 1) && !out.edges[i]; ++ny)
          for (int nx = std::max(0, x - 1); nx <= std::min(w - 1, x + 1); ++nx)
            if (out.at(nx, ny)) {
              out.edges[i] = true;
              changed = true;
              break;
            }
      }
    }
  }
  return out;
}

EdgeMap random_mask(std::mt19937_64& rng, int width, int height, double density) {
  std::bernoulli_distribution on(density);
  EdgeMap map(width, height);
  for (std::size_t i = 0; i < map.edges.size(); ++i) map.edges[i] = on(rng);
  return map;
}

SynthSpec single_cell_spec(int block, int dir, int count, bool upper) {
  SynthSpec spec;
  (upper ? spec.upper : spec.lower)[block][dir] = count;
  return spec;
}

GrooveLayout random_layout(std::mt19937_64& rng, int max_per_cell) {
  std::uniform_int_distribution<int> n(0, max_per_cell);
  GrooveLayout layout{};
  for (auto& block : layout)
    for (int& c : block) c = n(rng);
  return layout;
}

std::string scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lipprint-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::vector<SyntheticSample> synthetic_corpus(int subjects, int samples, int train,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SyntheticSample> out;
  for (int s = 0; s < subjects; ++s) {
    SynthSpec base;
    base.upper = random_layout(rng, 3);
    base.lower = random_layout(rng, 3);
    for (int k = 0; k < samples; ++k) {
      SynthSpec spec = base;
      std::bernoulli_distribution jitter(0.1);
      for (auto* layout : {&spec.upper, &spec.lower})
        for (auto& block : *layout)
          for (int& c : block)
            if (jitter(rng)) c = std::clamp(c + (rng() % 2 ? 1 : -1), 0, 3);
      spec.noise_level = 0.0005;
      LipPrintPair pair = generate_synthetic(spec, rng());
      pair.subject_id = "subject" + std::to_string(s);
      out.push_back({std::move(pair), "s" + std::to_string(s) + "_" + std::to_string(k), k < train});
    }
  }
  return out;
}

std::string write_synthetic_corpus(const std::string& dir, int subjects, int samples,
                                   int train, std::uint64_t seed) {
  std::ofstream manifest(fs::path(dir) / "manifest.csv");
  manifest << "subject_id,upper_path,lower_path,role\n";
  for (const auto& s : synthetic_corpus(subjects, samples, train, seed)) {
    save_pgm(s.pair.upper, fs::path(dir) / (s.stem + "_upper.pgm"));
    save_pgm(s.pair.lower, fs::path(dir) / (s.stem + "_lower.pgm"));
    manifest << s.pair.subject_id << ',' << s.stem << "_upper.pgm," << s.stem
             << "_lower.pgm," << (s.train ? "train" : "test") << '\n';
  }
  return (fs::path(dir) / "manifest.csv").string();
}

}  // namespace lipprint::testing
