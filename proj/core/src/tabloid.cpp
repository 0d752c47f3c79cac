#include "rankmix/tabloid.hpp"

#include <functional>

#include "rankmix/errors.hpp"

namespace rankmix {

std::size_t tabloid_dimension(int n, int ell) {
  if (n < 1) throw InvalidArgument("tabloid_dimension: n must be positive");
  if (ell < 0 || ell > n - 1)
    throw InvalidArgument("tabloid: ell=" + std::to_string(ell) + " must be in [0, " + std::to_string(n - 1) + "]");
  std::size_t d = 1;
  for (int i = 0; i < ell; ++i) d *= static_cast<std::size_t>(n - i);
  return d;
}

TabloidIndexer::TabloidIndexer(int n, int ell, std::size_t cap) : n_(n), ell_(ell) {
  const std::size_t d = tabloid_dimension(n, ell);
  if (d > cap)
    throw CapExceeded("tabloid dimension " + std::to_string(d) + " above cap " + std::to_string(cap));
  // Mixed-radix rank: the r-th entry contributes (rank among unused values)
  // times (n-r-1)(n-r-2)...(n-ell+1).
  place_value_.assign(static_cast<std::size_t>(ell), 1);
  for (int r = ell - 2; r >= 0; --r)
    place_value_[static_cast<std::size_t>(r)] =
        place_value_[static_cast<std::size_t>(r + 1)] * static_cast<std::size_t>(n - r - 1);
  tuples_.reserve(d);
  std::vector<int> current;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::function<void()> extend = [&]() {
    if (static_cast<int>(current.size()) == ell) {
      tuples_.push_back(current);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      current.push_back(v);
      extend();
      current.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  extend();
}

std::size_t TabloidIndexer::index(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != ell_)
    throw InvalidArgument("tuple length " + std::to_string(tuple.size()) + " does not match ell=" +
                          std::to_string(ell_));
  check_distinct_tuple(n_, tuple);
  return index_unchecked(tuple);
}

std::size_t TabloidIndexer::index_unchecked(std::span<const int> tuple) const {
  std::size_t idx = 0;
  for (std::size_t r = 0; r < tuple.size(); ++r) {
    int smaller_unused = tuple[r] - 1;
    for (std::size_t s = 0; s < r; ++s)
      if (tuple[s] < tuple[r]) --smaller_unused;
    idx += static_cast<std::size_t>(smaller_unused) * place_value_[r];
  }
  return idx;
}

std::vector<std::size_t> TabloidIndexer::action(const Permutation& g) const {
  if (g.size() != n_) throw SizeMismatch("tabloid action: permutation not in S_" + std::to_string(n_));
  std::vector<std::size_t> out(tuples_.size());
  std::vector<int> image(static_cast<std::size_t>(ell_));
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    for (int r = 0; r < ell_; ++r) image[static_cast<std::size_t>(r)] = g(tuples_[i][static_cast<std::size_t>(r)]);
    out[i] = index_unchecked(image);
  }
  return out;
}

MarginalMatrix::MarginalMatrix(int n, int ell, Eigen::MatrixXd entries)
    : n_(n), ell_(ell), indexer_(n, ell, static_cast<std::size_t>(std::max<Eigen::Index>(entries.rows(), 1))),
      entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != indexer_.size())
    throw SizeMismatch("marginal matrix must be D x D with D = n!/(n-ell)!");
}

double MarginalMatrix::at(std::span<const int> ibar, std::span<const int> jbar) const {
  return entries_(static_cast<Eigen::Index>(indexer_.index(ibar)), static_cast<Eigen::Index>(indexer_.index(jbar)));
}

MarginalMatrix rep_matrix(const Permutation& g, int ell, std::size_t cap) {
  const TabloidIndexer indexer(g.size(), ell, cap);
  const auto d = static_cast<Eigen::Index>(indexer.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  const auto action = indexer.action(g);
  for (Eigen::Index a = 0; a < d; ++a) m(a, static_cast<Eigen::Index>(action[static_cast<std::size_t>(a)])) = 1.0;
  return MarginalMatrix(g.size(), ell, std::move(m));
}

MarginalMatrix exact_fourier(const DensePmf& p, int ell, std::size_t cap) {
  const TabloidIndexer indexer(p.n(), ell, cap);
  const auto d = static_cast<Eigen::Index>(indexer.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t r = 0; r < p.size(); ++r) {
    const double w = p.at_rank(r);
    if (w == 0.0) continue;
    const auto action = indexer.action(Permutation::unrank(p.n(), r));
    for (Eigen::Index a = 0; a < d; ++a) m(a, static_cast<Eigen::Index>(action[static_cast<std::size_t>(a)])) += w;
  }
  return MarginalMatrix(p.n(), ell, std::move(m));
}

MarginalMatrix exact_fourier(const SparseRankingMixture& f, int ell, std::size_t cap) {
  const TabloidIndexer indexer(f.n(), ell, cap);
  const auto d = static_cast<Eigen::Index>(indexer.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& atom : f.atoms()) {
    const auto action = indexer.action(atom.perm);
    for (Eigen::Index a = 0; a < d; ++a)
      m(a, static_cast<Eigen::Index>(action[static_cast<std::size_t>(a)])) += atom.weight;
  }
  return MarginalMatrix(f.n(), ell, std::move(m));
}

MarginalMatrix empirical_fourier(std::span<const Permutation> samples, int ell, std::size_t cap) {
  if (samples.empty()) throw InvalidArgument("empirical_fourier: no samples");
  const int n = samples.front().size();
  const TabloidIndexer indexer(n, ell, cap);
  const auto d = static_cast<Eigen::Index>(indexer.size());
  // Integer counts keep the row sums exactly N before the final scaling.
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : samples) {
    if (s.size() != n) throw SizeMismatch("empirical_fourier: samples of different sizes");
    const auto action = indexer.action(s);
    for (Eigen::Index a = 0; a < d; ++a) counts(a, static_cast<Eigen::Index>(action[static_cast<std::size_t>(a)])) += 1.0;
  }
  counts /= static_cast<double>(samples.size());
  return MarginalMatrix(n, ell, std::move(counts));
}

}  // namespace rankmix
