#include <benchmark/benchmark.h>

#include <rankmix/characters.hpp>
#include <rankmix/noise.hpp>

using namespace rankmix;

static void BM_CharacterTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(character_table(n));
}
BENCHMARK(BM_CharacterTable)->DenseRange(4, 9);

static void BM_CharacterAtTransposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> t(static_cast<std::size_t>(n - 1), 1);
  t[0] = 2;
  const Partition tau(t);
  const auto parts = all_partitions(n);
  for (auto _ : state)
    for (const auto& mu : parts) benchmark::DoNotOptimize(character(mu, tau));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(parts.size()));
}
BENCHMARK(BM_CharacterAtTransposition)->Arg(8)->Arg(12)->Arg(16);

static void BM_MultiplierAllPartitions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto parts = all_partitions(n);
  const auto heat = NoiseModel::heat_kernel(n, 2.0);
  const auto mallows = NoiseModel::cayley_mallows(n, 0.8);
  for (auto _ : state)
    for (const auto& mu : parts) {
      benchmark::DoNotOptimize(multiplier(heat, mu));
      benchmark::DoNotOptimize(multiplier(mallows, mu));
    }
}
BENCHMARK(BM_MultiplierAllPartitions)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
