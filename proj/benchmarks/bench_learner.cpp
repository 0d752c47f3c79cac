#include <benchmark/benchmark.h>

#include <rankmix/learner.hpp>
#include <rankmix/noise.hpp>

using namespace rankmix;

static void BM_SupportStage(benchmark::State& state) {
  const int n = 8;
  const int k = static_cast<int>(state.range(0));
  Rng rng(3);
  const auto f = random_heavy_mixture(n, k, 0.5 / k, rng);
  const ExactMarginalOracle oracle(f);
  LearnConfig cfg;
  cfg.k = k;
  cfg.epsilon = 0.5 / k;
  StageState first;
  first = support_stage(first, oracle, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(support_stage(first, oracle, cfg));
}
BENCHMARK(BM_SupportStage)->Arg(2)->Arg(4)->Arg(6);

static void BM_LearnOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = 4;
  Rng rng(4);
  const auto f = random_heavy_mixture(n, k, 0.15, rng);
  const ExactMarginalOracle oracle(f);
  LearnConfig cfg;
  cfg.k = k;
  cfg.epsilon = 0.15;
  for (auto _ : state) benchmark::DoNotOptimize(learn(oracle, cfg));
}
BENCHMARK(BM_LearnOracle)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_LearnSampled(benchmark::State& state) {
  const int n = 6;
  Rng rng(5);
  const auto f = random_heavy_mixture(n, 2, 0.3, rng);
  const auto noise = NoiseModel::heat_kernel(n, 2.0);
  const NoiseSampler sampler(noise);
  std::vector<Permutation> samples;
  for (long i = 0; i < state.range(0); ++i) samples.push_back(compose(sampler(rng), sample(f, rng)));
  LearnConfig cfg;
  cfg.k = 2;
  cfg.epsilon = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(learn_from_samples(samples, noise, cfg, &rng));
}
BENCHMARK(BM_LearnSampled)->Arg(50000)->Arg(200000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
