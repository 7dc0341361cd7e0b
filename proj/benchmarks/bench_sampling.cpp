#include <benchmark/benchmark.h>

#include "hypertest/generators.hpp"

namespace {

using namespace hypertest;

void BM_SampleSparseHsbm(benchmark::State& state) {
  LayerSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.m = 3;
  const double n2 = static_cast<double>(spec.n) * static_cast<double>(spec.n);
  spec.p_within = 9.0 / n2;
  spec.p_between = 1.0 / n2;
  spec.communities = CommunityDistribution::uniform(2);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    RngStream rng(7, rep++);
    benchmark::DoNotOptimize(sample_uniform_hsbm(spec, rng));
  }
}
BENCHMARK(BM_SampleSparseHsbm)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SampleDenseEr(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    RngStream rng(7, rep++);
    benchmark::DoNotOptimize(sample_uniform_er(n, 3, 0.01, rng));
  }
}
BENCHMARK(BM_SampleDenseEr)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SampleDegreeCorrected(benchmark::State& state) {
  LayerSpec spec;
  spec.n = 100;
  spec.m = 3;
  spec.p_within = 0.02;
  spec.p_between = 0.01;
  spec.communities = CommunityDistribution::uniform(2);
  spec.weights = WeightLaw::two_point(0.5, 1.3228756555322954, 0.5);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    RngStream rng(7, rep++);
    benchmark::DoNotOptimize(sample_uniform_hsbm(spec, rng));
  }
}
BENCHMARK(BM_SampleDegreeCorrected)->Unit(benchmark::kMillisecond);

}  // namespace
