#include <gtest/gtest.h>

#include <rankmix/errors.hpp>
#include <rankmix/estimator.hpp>

#include "oracles.hpp"

using namespace rankmix;

namespace {

std::vector<Permutation> noisy_samples(const SparseRankingMixture& f, const NoiseModel& m, long count, Rng& rng) {
  const NoiseSampler sampler(m);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(compose(sampler(rng), sample(f, rng)));
  return out;
}

std::vector<NoiseModel> models(int n) {
  std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
  p[0] = 0.5;
  p[2] = 0.3;
  p[3] = 0.2;
  return {NoiseModel::symmetric(n, p), NoiseModel::heat_kernel(n, 1.0), NoiseModel::cayley_mallows(n, 0.5),
          NoiseModel::cayley_mallows(n, 1.5)};
}

}  // namespace

TEST(Budget, FormulaAndRepetitions) {
  const double d = 20, delta = 0.1, tau = 0.05, s = 0.5;
  const auto expect = static_cast<long>(std::ceil(2 * std::pow(d / (delta * s), 2) * std::log(2 * d * d / tau)));
  EXPECT_EQ(sample_budget(delta, tau, 20, s), expect);
  EXPECT_EQ(default_repetitions(0.05), 24);
  EXPECT_THROW(sample_budget(0.0, 0.1, 4, 1.0), ContractError);
  EXPECT_NEAR(hoeffding_radius(1000, 4, 0.1), std::sqrt(std::log(2 * 16 / 0.1) / 2000), 1e-15);
}

TEST(Estimate, PointMassNoiseReturnsRepMatrix) {
  const auto s = Permutation::from_one_line({3, 5, 1, 2, 4});
  const auto noise = NoiseModel::symmetric(5, {1, 0, 0, 0, 0, 0});
  const std::vector<Permutation> samples(10, s);
  EstimatorConfig cfg;
  const auto est = estimate_marginal_matrix(samples, noise, 2, cfg);
  EXPECT_NEAR((est.matrix.entries() - rep_matrix(s, 2).entries()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  EXPECT_NEAR(est.sigma_min, 1.0, 1e-12);
}

TEST(Estimate, ExactPipelineRecoversFourier) {
  Rng rng(1);
  EstimatorConfig cfg;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_heavy_mixture(5, 3, 0.1, rng);
    for (const auto& m : models(5)) {
      const auto m1 = noise_fourier(m, 2, cfg);
      const auto m2 = exact_fourier(convolve_exact(noise_pmf_exact(m), f), 2);
      const auto got = invert_noise(m1, m2, cfg.sigma_min_floor);
      EXPECT_NEAR((got.entries() - exact_fourier(f, 2).entries()).cwiseAbs().maxCoeff(), 0.0, 1e-8) << m.name();
    }
  }
}

TEST(Estimate, ExactInputsIdentity) {
  Rng rng(2);
  EstimatorConfig cfg;
  for (int n = 3; n <= 6; ++n)
    for (const auto& m : models(n))
      for (int ell = 1; ell <= 2; ++ell) {
        if (min_multiplier_up(m, ell) <= 1e-6) continue;
        const auto f = random_heavy_mixture(n, 3, 0.1, rng);
        const auto F = exact_fourier(f, ell);
        const auto m1 = noise_fourier(m, ell, cfg);
        const MarginalMatrix m2(n, ell, m1.matrix * F.entries());
        EXPECT_NEAR((invert_noise(m1, m2, 1e-6).entries() - F.entries()).cwiseAbs().maxCoeff(), 0.0, 1e-8);
      }
}

TEST(Estimate, SingularMallowsNoise) {
  Rng rng(3);
  const auto m = NoiseModel::cayley_mallows(6, std::log(2.0));
  const auto f = random_heavy_mixture(6, 2, 0.2, rng);
  const auto samples = noisy_samples(f, m, 100, rng);
  EXPECT_THROW(estimate_marginal_matrix(samples, m, 2, EstimatorConfig{}), SingularNoise);
}

TEST(Estimate, StrictModeRejectsSmallSamples) {
  Rng rng(4);
  const auto m = NoiseModel::heat_kernel(4, 1.0);
  const auto f = random_heavy_mixture(4, 2, 0.2, rng);
  EstimatorConfig cfg;
  cfg.strict = true;
  EXPECT_THROW(estimate_marginal_matrix(noisy_samples(f, m, 100, rng), m, 1, cfg), InsufficientSamples);
}

TEST(Estimate, RejectsBadConfig) {
  EstimatorConfig cfg;
  cfg.delta = 1.5;
  const std::vector<Permutation> s(3, Permutation::identity(4));
  EXPECT_THROW(estimate_marginal_matrix(s, NoiseModel::heat_kernel(4, 1.0), 1, cfg), ContractError);
  cfg.delta = 0.1;
  cfg.tau = 0.0;
  EXPECT_THROW(estimate_marginal_matrix(s, NoiseModel::heat_kernel(4, 1.0), 1, cfg), ContractError);
}

TEST(Estimate, StatisticalAccuracy) {
  const int n = 5;
  const auto m = NoiseModel::heat_kernel(n, 1.0);
  EstimatorConfig cfg;
  cfg.repetitions = 1;
  int good = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(100 + trial);
    const auto f = random_heavy_mixture(n, 3, 0.1, rng);
    const auto est = estimate_marginal_matrix(noisy_samples(f, m, 100000, rng), m, 1, cfg);
    good += (est.matrix.entries() - exact_fourier(f, 1).entries()).cwiseAbs().maxCoeff() <= 0.02;
  }
  EXPECT_GE(good, 19);
}

TEST(Estimate, ErrorGrowsAsConditioningWorsens) {
  const int n = 5;
  Rng frng(7);
  const auto f = random_heavy_mixture(n, 3, 0.1, frng);
  EstimatorConfig cfg;
  cfg.repetitions = 1;
  std::vector<double> sigma, err;
  for (double q : {3.5, 3.0, 2.6, 2.3, 2.1}) {
    const auto m = NoiseModel::cayley_mallows(n, std::log(q));
    double total = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      Rng rng(500 + rep);
      const auto est = estimate_marginal_matrix(noisy_samples(f, m, 20000, rng), m, 2, cfg);
      total += (est.matrix.entries() - exact_fourier(f, 2).entries()).cwiseAbs().maxCoeff();
    }
    sigma.push_back(min_multiplier_up(m, 2));
    err.push_back(total);
  }
  // Spearman correlation between 1/sigma and the error.
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) r[i] += v[j] < v[i];
    return r;
  };
  std::vector<double> inv;
  for (double s : sigma) inv.push_back(1.0 / s);
  const auto ra = ranks(inv), rb = ranks(err);
  double d2 = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double rho = 1.0 - 6.0 * d2 / (5.0 * 24.0);
  EXPECT_GT(rho, 0.0);
}

TEST(Estimate, MedianAmplificationOnDisjointBatches) {
  const int n = 4;
  const auto m = NoiseModel::heat_kernel(n, 1.0);
  Rng frng(9);
  const auto f = random_heavy_mixture(n, 2, 0.2, frng);
  const auto truth = exact_fourier(f, 1).entries();
  // Batches of 200 samples: a single batch misses radius r often; the
  // median over 15 batches should miss far less often.
  const double r = 0.05;
  int single_fail = 0, median_fail = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(1000 + trial);
    const auto s = noisy_samples(f, m, 3000, rng);
    EstimatorConfig one;
    one.repetitions = 1;
    const auto a = estimate_marginal_matrix(std::span(s).first(200), m, 1, one);
    single_fail += std::abs(a.matrix.entries()(0, 0) - truth(0, 0)) > r;
    EstimatorConfig med;
    med.repetitions = 15;
    const auto b = estimate_marginal_matrix(s, m, 1, med);
    EXPECT_EQ(b.repetitions, 15);
    median_fail += std::abs(b.matrix.entries()(0, 0) - truth(0, 0)) > r;
  }
  EXPECT_LE(median_fail, single_fail);
  EXPECT_LE(median_fail, 2);
}

TEST(Estimate, EmpiricalNoiseMatrix) {
  Rng rng(10);
  const auto m = NoiseModel::heat_kernel(4, 0.5);
  EstimatorConfig cfg;
  cfg.noise_matrix_mode = NoiseMatrixMode::Empirical;
  cfg.noise_samples = 200000;
  const auto m1 = noise_fourier(m, 1, cfg, &rng);
  EXPECT_EQ(m1.samples_used, 200000);
  const auto exact = exact_fourier(noise_pmf_exact(m), 1).entries();
  EXPECT_LT((m1.matrix - exact).cwiseAbs().maxCoeff(), 0.01);
  EXPECT_THROW(noise_fourier(m, 1, cfg, nullptr), ContractError);
}

TEST(Query, ClampsAndFlags) {
  Eigen::MatrixXd e(3, 3);
  e << 1.003, -0.003, 0.0, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5;
  const MarginalMatrix m(3, 1, e);
  const auto low = query_marginal(m, std::vector<int>{1}, std::vector<int>{2});
  EXPECT_EQ(low.value, 0.0);
  EXPECT_EQ(low.raw, -0.003);
  EXPECT_TRUE(low.clamped);
  const auto high = query_marginal(m, std::vector<int>{1}, std::vector<int>{1});
  EXPECT_EQ(high.value, 1.0);
  EXPECT_TRUE(high.clamped);
  EXPECT_FALSE(query_marginal(m, std::vector<int>{2}, std::vector<int>{3}).clamped);
  EXPECT_THROW(query_marginal(m, std::vector<int>{1, 2}, std::vector<int>{1, 2}), ContractError);
}

TEST(Query, PointMassAndRowSums) {
  const auto s = Permutation::from_one_line({2, 3, 1, 4});
  const auto m = exact_fourier(SparseRankingMixture::point_mass(s), 2);
  const auto& idx = m.indexer();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const double v = query_marginal(m, idx.tuple(a), idx.tuple(b)).value;
      EXPECT_TRUE(v == 0.0 || v == 1.0);
      row += v;
    }
    EXPECT_NEAR(row, 1.0, 1e-12);
  }
}
