#include <benchmark/benchmark.h>

#include <random>

#include "lipprint/components.hpp"
#include "lipprint/edges.hpp"
#include "lipprint/features.hpp"
#include "lipprint/synth.hpp"

namespace {

using namespace lipprint;

LipPrintPair sample_pair(int size) {
  SynthSpec spec;
  spec.size = size;
  for (auto* layout : {&spec.upper, &spec.lower})
    for (auto& block : *layout) block = {2, 2, 1, 1};
  spec.noise_level = 0.001;
  return generate_synthetic(spec, 5);
}

void BM_GaussianSmooth(benchmark::State& state) {
  const GrayImage img = sample_pair(static_cast<int>(state.range(0))).upper;
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_smooth(img, 1.4));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_GaussianSmooth)->Arg(256)->Arg(512);

void BM_DirectionalMaps(benchmark::State& state) {
  const GrayImage img = gaussian_smooth(sample_pair(static_cast<int>(state.range(0))).upper, 1.4);
  const EdgeConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(directional_maps(img, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_DirectionalMaps)->Arg(256)->Arg(512);

void BM_Canny(benchmark::State& state) {
  const GrayImage img = gaussian_smooth(sample_pair(static_cast<int>(state.range(0))).upper, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(canny(img, 0.10, 0.25));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_Canny)->Arg(256)->Arg(512);

void BM_LabelComponents(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::bernoulli_distribution on(0.4);
  EdgeMap map(side, side);
  for (std::size_t i = 0; i < map.edges.size(); ++i) map.edges[i] = on(rng);
  for (auto _ : state) benchmark::DoNotOptimize(label_components(map));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(map.edges.size()));
}
BENCHMARK(BM_LabelComponents)->Arg(256)->Arg(1024);

void BM_ExtractFast(benchmark::State& state) {
  const LipPrintPair pair = sample_pair(256);
  for (auto _ : state) benchmark::DoNotOptimize(extract_fast(pair));
}
BENCHMARK(BM_ExtractFast);

void BM_ExtractAccurate(benchmark::State& state) {
  const LipPrintPair pair = sample_pair(256);
  for (auto _ : state) benchmark::DoNotOptimize(extract_accurate(pair));
}
BENCHMARK(BM_ExtractAccurate);

}  // namespace
