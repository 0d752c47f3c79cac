#include <random>

#include <gtest/gtest.h>

#include <rankmix/errors.hpp>
#include <rankmix/simplex.hpp>

using namespace rankmix;

TEST(Simplex, TextbookProblem) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  Eigen::VectorXd b(3), c(2);
  b << 4, 12, 18;
  c << 3, 5;
  const auto r = maximize(A, b, c);
  ASSERT_EQ(r.status, SimplexStatus::Optimal);
  EXPECT_NEAR(r.objective, 36.0, 1e-12);
  EXPECT_NEAR(r.x[0], 2.0, 1e-12);
  EXPECT_NEAR(r.x[1], 6.0, 1e-12);
  // Dual optimum (0, 3/2, 1) with b^T y = 36.
  EXPECT_NEAR(r.duals[0], 0.0, 1e-12);
  EXPECT_NEAR(r.duals[1], 1.5, 1e-12);
  EXPECT_NEAR(r.duals[2], 1.0, 1e-12);
}

TEST(Simplex, Unbounded) {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1), c(2);
  b << 1;
  c << 0, 1;
  EXPECT_EQ(maximize(A, b, c).status, SimplexStatus::Unbounded);
}

TEST(Simplex, DegenerateProblemTerminates) {
  // Classic cycling example for the largest-coefficient rule (Beale).
  Eigen::MatrixXd A(3, 4);
  A << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0;
  Eigen::VectorXd b(3), c(4);
  b << 0, 0, 1;
  c << 0.75, -150, 0.02, -6;
  const auto r = maximize(A, b, c);
  ASSERT_EQ(r.status, SimplexStatus::Optimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-12);
}

TEST(Simplex, StrongDualityOnRandomProblems) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 3 + trial % 5, n = 2 + trial % 4;
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m), c(n);
    for (int i = 0; i < m; ++i) {
      b(i) = u(rng);
      for (int j = 0; j < n; ++j) A(i, j) = u(rng);
    }
    for (int j = 0; j < n; ++j) c(j) = u(rng) - 0.2;
    const auto r = maximize(A, b, c);
    ASSERT_EQ(r.status, SimplexStatus::Optimal);
    const Eigen::Map<const Eigen::VectorXd> x(r.x.data(), n), y(r.duals.data(), m);
    EXPECT_LE(((A * x - b).array()).maxCoeff(), 1e-10);
    EXPECT_GE(x.minCoeff(), -1e-12);
    EXPECT_GE(y.minCoeff(), -1e-12);
    EXPECT_GE((A.transpose() * y - c).minCoeff(), -1e-10);
    EXPECT_NEAR(c.dot(x), b.dot(y), 1e-10);
    EXPECT_NEAR(r.objective, c.dot(x), 1e-10);
  }
}

TEST(Simplex, RejectsNegativeRightHandSide) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(1, 1);
  Eigen::VectorXd b(1), c(1);
  b << -1;
  c << 1;
  EXPECT_THROW(maximize(A, b, c), ContractError);
}
