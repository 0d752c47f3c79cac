#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <rankmix/errors.hpp>
#include <rankmix/noise.hpp>
#include <rankmix/tabloid.hpp>

#include "oracles.hpp"

using namespace rankmix;

namespace {

std::vector<NoiseModel> models(int n) {
  std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
  p[0] = 0.6;
  p[2] = 0.4;
  return {NoiseModel::symmetric(n, p), NoiseModel::heat_kernel(n, 1.5), NoiseModel::cayley_mallows(n, 1.1)};
}

// The 0/1 matrix straight from the definition, over oracle-enumerated tuples.
Eigen::MatrixXd rep_by_definition(const Permutation& g, int ell) {
  const TabloidIndexer idx(g.size(), ell);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      bool ok = true;
      for (int r = 0; r < ell; ++r) ok = ok && g(idx.tuple(a)[static_cast<std::size_t>(r)]) == idx.tuple(b)[static_cast<std::size_t>(r)];
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = ok ? 1.0 : 0.0;
    }
  return m;
}

}  // namespace

TEST(Indexer, DimensionAndOrder) {
  EXPECT_EQ(tabloid_dimension(5, 2), 20u);
  EXPECT_EQ(tabloid_dimension(6, 0), 1u);
  EXPECT_EQ(tabloid_dimension(7, 3), 210u);
  EXPECT_THROW(tabloid_dimension(4, 4), ContractError);
  const TabloidIndexer idx(4, 2);
  ASSERT_EQ(idx.size(), 12u);
  EXPECT_EQ(idx.tuple(0), (std::vector<int>{1, 2}));
  EXPECT_EQ(idx.tuple(3), (std::vector<int>{2, 1}));
  EXPECT_EQ(idx.tuple(11), (std::vector<int>{4, 3}));
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LT(idx.tuple(i - 1), idx.tuple(i));
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.index(idx.tuple(i)), i);
  EXPECT_THROW(idx.index(std::vector<int>{1, 1}), ContractError);
  EXPECT_THROW(TabloidIndexer(10, 5), CapExceeded);
}

TEST(RepMatrix, IdentityAndSingleTuples) {
  const auto e = rep_matrix(Permutation::identity(5), 2);
  EXPECT_TRUE(e.entries().isIdentity());
  const auto g = Permutation::from_one_line({3, 1, 4, 2, 5});
  const auto m = rep_matrix(g, 1);
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) EXPECT_EQ(m.entries()(a - 1, b - 1), g(a) == b ? 1.0 : 0.0);
  EXPECT_THROW(rep_matrix(g, 5), ContractError);
}

TEST(RepMatrix, MatchesDefinition) {
  for (const auto& g : enumerate_sn(4))
    for (int ell = 0; ell <= 3; ++ell) EXPECT_EQ(rep_matrix(g, ell).entries(), rep_by_definition(g, ell));
}

TEST(RepMatrix, ReversesProducts) {
  // Entry (a, b) = [g(a) = b] makes the map an anti-homomorphism.
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_permutation(5, rng);
    const auto h = random_permutation(5, rng);
    for (int ell = 1; ell <= 2; ++ell) {
      const auto gh = rep_matrix(compose(g, h), ell).entries();
      EXPECT_EQ(gh, rep_matrix(h, ell).entries() * rep_matrix(g, ell).entries());
    }
  }
}

TEST(ExactFourier, Examples) {
  const auto s = Permutation::from_one_line({2, 5, 1, 3, 4});
  EXPECT_EQ(exact_fourier(SparseRankingMixture::point_mass(s), 2).entries(), rep_matrix(s, 2).entries());
  const auto u = exact_fourier(DensePmf::uniform(5), 1);
  EXPECT_NEAR((u.entries().array() - 0.2).abs().maxCoeff(), 0.0, 1e-15);
}

TEST(ExactFourier, EntriesAreMarginals) {
  Rng rng(4);
  const auto f = random_heavy_mixture(5, 3, 0.1, rng);
  const auto m = exact_fourier(f, 2);
  const auto& idx = m.indexer();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      EXPECT_NEAR(m.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                  oracle::marginal(f, idx.tuple(a), idx.tuple(b)), 1e-12);
  EXPECT_NEAR((m.entries().rowwise().sum().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
  EXPECT_NEAR((m.entries().colwise().sum().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
}

TEST(ExactFourier, ConvolutionIdentity) {
  Rng rng(5);
  for (int n = 3; n <= 5; ++n) {
    const auto f = random_heavy_mixture(n, 3, 0.1, rng);
    for (const auto& m : models(n)) {
      const auto K = noise_pmf_exact(m);
      for (int ell = 1; ell <= 2; ++ell) {
        const auto lhs = exact_fourier(convolve_exact(K, f), ell).entries();
        const auto kh = exact_fourier(K, ell).entries();
        const auto fh = exact_fourier(f, ell).entries();
        EXPECT_NEAR((lhs - kh * fh).cwiseAbs().maxCoeff(), 0.0, 1e-10);
        EXPECT_NEAR((lhs - fh * kh).cwiseAbs().maxCoeff(), 0.0, 1e-10);
      }
    }
  }
}

TEST(ExactFourier, MarginalsOfConvolution) {
  Rng rng(6);
  const int n = 5;
  const auto f = random_heavy_mixture(n, 3, 0.1, rng);
  const auto K = noise_pmf_exact(NoiseModel::heat_kernel(n, 0.8));
  const auto conv = convolve_exact(K, f);
  const Eigen::MatrixXd prod = exact_fourier(K, 2).entries() * exact_fourier(f, 2).entries();
  const TabloidIndexer idx(n, 2);
  for (std::size_t a = 0; a < idx.size(); a += 3)
    for (std::size_t b = 0; b < idx.size(); ++b)
      EXPECT_NEAR(exact_marginal(conv, idx.tuple(a), idx.tuple(b)),
                  prod(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), 1e-10);
}

TEST(ExactFourier, SpectrumLiesInUpSetMultipliers) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& m : models(n))
      for (int ell = 1; ell <= 2; ++ell) {
        const auto K = exact_fourier(noise_pmf_exact(m), ell).entries();
        std::vector<double> allowed;
        for (const auto& mu : up_set(hook_partition(n, ell))) allowed.push_back(multiplier(m, mu).value);
        const Eigen::EigenSolver<Eigen::MatrixXd> es(K);
        for (const auto& ev : es.eigenvalues()) {
          double best = 1e9;
          for (double c : allowed) best = std::min(best, std::abs(ev - std::complex<double>(c, 0.0)));
          EXPECT_LE(best, 1e-8) << m.name() << " n=" << n << " ell=" << ell;
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
        EXPECT_NEAR(svd.singularValues().minCoeff(), min_multiplier_up(m, ell), 1e-8) << m.name() << " n=" << n << " ell=" << ell;
      }
}

TEST(ExactFourier, ClassFunctionParseval) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& m : models(n)) {
      const auto pmf = noise_pmf_exact(m);
      double lhs = 0.0;
      for (double v : pmf.values()) lhs += v * v;
      double rhs = 0.0;
      for (const auto& mu : all_partitions(n)) {
        const double d = static_cast<double>(irrep_dimension(mu));
        const double c = multiplier(m, mu).value;
        rhs += d * d * c * c;
      }
      EXPECT_NEAR(lhs, rhs / static_cast<double>(factorial(n)), 1e-12);
    }
}

TEST(EmpiricalFourier, Examples) {
  const auto s = Permutation::from_one_line({4, 2, 1, 3});
  const std::vector<Permutation> same(7, s);
  EXPECT_EQ(empirical_fourier(same, 2).entries(), rep_matrix(s, 2).entries());
  EXPECT_THROW(empirical_fourier(std::vector<Permutation>{}, 1), ContractError);

  Rng rng(8);
  std::vector<Permutation> uni;
  for (int i = 0; i < 100000; ++i) uni.push_back(random_permutation(4, rng));
  const auto m = empirical_fourier(uni, 1).entries();
  EXPECT_LT((m.array() - 0.25).abs().maxCoeff(), 0.02);

  std::vector<Permutation> few;
  for (int i = 0; i < 13; ++i) few.push_back(random_permutation(5, rng));
  const auto r = empirical_fourier(few, 2).entries();
  for (Eigen::Index i = 0; i < r.rows(); ++i) EXPECT_NEAR(r.row(i).sum(), 1.0, 1e-14);
}
