#include <benchmark/benchmark.h>

#include <rankmix/estimator.hpp>
#include <rankmix/noise.hpp>
#include <rankmix/tabloid.hpp>

using namespace rankmix;

static void BM_ExactFourierMixture(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int ell = static_cast<int>(state.range(1));
  Rng rng(1);
  const auto f = random_heavy_mixture(n, 4, 0.1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_fourier(f, ell));
}
BENCHMARK(BM_ExactFourierMixture)->Args({6, 2})->Args({8, 2})->Args({8, 3});

static void BM_EmpiricalFourier(benchmark::State& state) {
  const int n = 6;
  const int ell = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<Permutation> samples;
  for (int i = 0; i < 10000; ++i) samples.push_back(random_permutation(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_fourier(samples, ell));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples.size()));
}
BENCHMARK(BM_EmpiricalFourier)->Arg(1)->Arg(2)->Arg(3);

static void BM_NoiseFourierExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = NoiseModel::heat_kernel(n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(noise_fourier(model, 2, EstimatorConfig{}));
}
BENCHMARK(BM_NoiseFourierExact)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
