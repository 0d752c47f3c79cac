#include "rankmix/simplex.hpp"

#include <algorithm>
#include <limits>

#include "rankmix/errors.hpp"

namespace rankmix {

SimplexResult maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                       long max_pivots, double tolerance) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index vars = A.cols();
  if (b.size() != rows || c.size() != vars) throw SizeMismatch("simplex: inconsistent shapes");
  if ((b.array() < 0.0).any()) throw InvalidArgument("simplex: right-hand side must be non-negative");

  // Columns: structural variables, then slacks, then the right-hand side.
  const Eigen::Index cols = vars + rows;
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  tab.topLeftCorner(rows, vars) = A;
  tab.block(0, vars, rows, rows).setIdentity();
  tab.col(cols).head(rows) = b;
  tab.row(rows).head(vars) = -c.transpose();

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = vars + i;

  SimplexResult out;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (tab(rows, j) < -tolerance) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      out.status = SimplexStatus::Optimal;
      break;
    }
    if (out.pivots >= max_pivots) {
      out.status = SimplexStatus::IterationLimit;
      break;
    }
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double a = tab(i, enter);
      if (a <= tolerance) continue;
      const double ratio = tab(i, cols) / a;
      const bool smaller = leave < 0 || ratio < best - tolerance;
      const bool tie = !smaller && ratio <= best + tolerance &&
                       basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)];
      if (smaller || tie) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave < 0) {
      out.status = SimplexStatus::Unbounded;
      break;
    }
    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++out.pivots;
  }

  out.x.assign(static_cast<std::size_t>(vars), 0.0);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index v = basis[static_cast<std::size_t>(i)];
    if (v < vars) out.x[static_cast<std::size_t>(v)] = tab(i, cols);
  }
  out.duals.resize(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) out.duals[static_cast<std::size_t>(i)] = tab(rows, vars + i);
  out.objective = tab(rows, cols);
  return out;
}

}  // namespace rankmix
