#include <benchmark/benchmark.h>
#include <tsfeat/baselines.hpp>
#include <tsfeat/features.hpp>

#include <random>
#include <vector>

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

void BM_trev(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tsfeat::features::trev(x, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_trev)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oN);

void BM_motif(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tsfeat::features::motif_freq(x, "dudu"));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_motif)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oN);

void BM_spectral(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(tsfeat::features::spectral_q90_mel(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_spectral)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oNLogN);

void BM_dtw_full(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 4), y = noise(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(tsfeat::dtw_dist(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_dtw_full)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_dtw_band(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 6), y = noise(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(tsfeat::dtw_dist(x, y, n / 10));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_dtw_band)->RangeMultiplier(2)->Range(64, 1024);

}  // namespace
BENCHMARK_MAIN();
