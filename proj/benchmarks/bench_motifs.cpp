#include <benchmark/benchmark.h>

#include "hypertest/generators.hpp"
#include "hypertest/motifs.hpp"

namespace {

using namespace hypertest;

Hypergraph er(std::size_t n, std::size_t m, double p) {
  RngStream rng(1, 0);
  return sample_uniform_er(n, m, p, rng);
}

void BM_Hypervees(benchmark::State& state) {
  const Hypergraph g = er(static_cast<std::size_t>(state.range(0)), 3, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(count_hypervees(g, 1));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_Hypervees)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Hypertriangles(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(1));
  const double p = m == 2 ? 0.1 : 0.01;
  const Hypergraph g = er(static_cast<std::size_t>(state.range(0)), m, p);
  for (auto _ : state) benchmark::DoNotOptimize(count_hypertriangles(g, 1));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_Hypertriangles)->Args({100, 2})->Args({100, 3})->Args({200, 2})->Unit(benchmark::kMillisecond);

void BM_LooseCycles(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  // average degree 2
  const double p = 2.0 / (static_cast<double>(n) * static_cast<double>(n));
  const Hypergraph g = er(n, 3, p);
  const std::size_t h = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_loose_cycles(g, h));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_LooseCycles)->Args({300, 3})->Args({3000, 4})->Args({3000, 8})->Unit(benchmark::kMillisecond);

}  // namespace
