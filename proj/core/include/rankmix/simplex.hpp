#pragma once

#include <vector>

#include <Eigen/Dense>

namespace rankmix {

enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  // Shadow prices of the rows of A; an optimal solution of the dual
  // min b^T y s.t. A^T y >= c, y >= 0.
  std::vector<double> duals;
  long pivots = 0;
};

// maximize c^T x s.t. A x <= b, x >= 0, for b >= 0 (the slack basis is
// feasible, so no phase one). Dense tableau with Bland's rule: entering
// column is the lowest index with negative reduced cost, ties in the ratio
// test go to the lowest basic variable index. Output is a deterministic
// function of the input.
SimplexResult maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                       long max_pivots = 100000, double tolerance = 1e-12);

}  // namespace rankmix
