#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rankmix/distribution.hpp"

namespace rankmix {

// Largest hook-representation dimension n!/(n-ell)! built by default.
inline constexpr std::size_t kDefaultTabloidCap = 5040;

// n (n-1) ... (n-ell+1): number of ordered ell-tuples of distinct elements.
std::size_t tabloid_dimension(int n, int ell);

// Lexicographic enumeration of ordered ell-tuples of distinct elements of
// {1..n}. Indices are stable across runs and part of the file formats.
class TabloidIndexer {
 public:
  TabloidIndexer(int n, int ell, std::size_t cap = kDefaultTabloidCap);

  int n() const { return n_; }
  int ell() const { return ell_; }
  std::size_t size() const { return tuples_.size(); }
  std::size_t index(std::span<const int> tuple) const;
  const std::vector<int>& tuple(std::size_t index) const { return tuples_[index]; }
  // index(g(tuple(i))) for every i.
  std::vector<std::size_t> action(const Permutation& g) const;

 private:
  std::size_t index_unchecked(std::span<const int> tuple) const;

  int n_;
  int ell_;
  std::vector<std::vector<int>> tuples_;
  std::vector<std::size_t> place_value_;
};

// A D x D real matrix over ordered ell-tuples; entry (ibar, jbar) is the
// (ibar, jbar)-marginal Pr[sigma(i_r) = j_r for all r] for exact inputs.
class MarginalMatrix {
 public:
  MarginalMatrix(int n, int ell, Eigen::MatrixXd entries);

  int n() const { return n_; }
  int ell() const { return ell_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double at(std::span<const int> ibar, std::span<const int> jbar) const;
  const TabloidIndexer& indexer() const { return indexer_; }

 private:
  int n_;
  int ell_;
  TabloidIndexer indexer_;
  Eigen::MatrixXd entries_;
};

// 0/1 matrix with entry (a, b) = 1 iff g(a_r) = b_r for all r. With
// compose(g, h) = g after h this satisfies
// rep_matrix(compose(g, h)) = rep_matrix(h) * rep_matrix(g).
MarginalMatrix rep_matrix(const Permutation& g, int ell, std::size_t cap = kDefaultTabloidCap);

// sum_g p(g) rep_matrix(g).
MarginalMatrix exact_fourier(const DensePmf& p, int ell, std::size_t cap = kDefaultTabloidCap);
MarginalMatrix exact_fourier(const SparseRankingMixture& f, int ell, std::size_t cap = kDefaultTabloidCap);

// (1/N) sum over samples of rep_matrix(sample); summed sequentially in input order.
MarginalMatrix empirical_fourier(std::span<const Permutation> samples, int ell,
                                 std::size_t cap = kDefaultTabloidCap);

}  // namespace rankmix
