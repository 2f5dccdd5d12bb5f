#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. None of them share code with core/.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lipprint/edges.hpp"
#include "lipprint/image.hpp"
#include "lipprint/synth.hpp"

namespace lipprint::testing {

/// Recursive 8-connected flood fill.
std::size_t flood_fill_count(const EdgeMap& map);

/// Direct 2-D sampled Gaussian, normalised over the full square support.
std::vector<std::vector<double>> gaussian_kernel_2d(double sigma);
GrayImage brute_force_smooth(const GrayImage& img, double sigma);

/// Textbook Canny: explicit Sobel sums, slope-based angle bins and
/// fixpoint hysteresis.
EdgeMap reference_canny(const GrayImage& img, double low_ratio, double high_ratio);

EdgeMap random_mask(std::mt19937_64& rng, int width, int height, double density);

/// All-zero layouts with `count` grooves of direction `dir` in block `block`.
SynthSpec single_cell_spec(int block, int dir, int count, bool upper = true);

struct SyntheticSample {
  LipPrintPair pair;
  std::string stem;  // file-name stem, e.g. s0_2
  bool train = false;
};

/// `subjects` x `samples` synthetic pairs. Each subject has its own random
/// groove layout; its samples occasionally gain or lose a groove and differ in
/// placement and noise. The first `train` samples per subject are training.
std::vector<SyntheticSample> synthetic_corpus(int subjects, int samples, int train,
                                              std::uint64_t seed);

/// Corpus of `subjects` x `samples` synthetic pairs written as PGM files plus
/// a manifest (first `train` samples per subject are training). Returns the
/// manifest path.
std::string write_synthetic_corpus(const std::string& dir, int subjects, int samples,
                                   int train, std::uint64_t seed);

GrooveLayout random_layout(std::mt19937_64& rng, int max_per_cell);

/// Scratch directory under the system temp dir, emptied on construction.
std::string scratch_dir(const std::string& name);

}  // namespace lipprint::testing
