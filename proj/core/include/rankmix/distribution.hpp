#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "rankmix/permutation.hpp"

namespace rankmix {

// All sampling takes an explicit generator; equal seeds reproduce runs.
using Rng = std::mt19937_64;

struct Atom {
  Permutation perm;
  double weight;
};

// A k-sparse distribution on S_n: distinct permutations with positive
// weights summing to one.
class SparseRankingMixture {
 public:
  // Weights are renormalized when their sum is within 1e-9 of one and
  // rejected otherwise. When epsilon is given every weight must be at least
  // epsilon.
  SparseRankingMixture(int n, std::vector<Atom> atoms, std::optional<double> epsilon = std::nullopt);

  static SparseRankingMixture point_mass(const Permutation& p);

  int n() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::optional<double> epsilon() const { return epsilon_; }
  // 0 when p is not an atom.
  double weight_of(const Permutation& p) const;

 private:
  int n_;
  std::vector<Atom> atoms_;
  std::optional<double> epsilon_;
};

// A full probability vector on S_n indexed by lexicographic rank.
class DensePmf {
 public:
  static DensePmf uniform(int n, int cap = kDefaultEnumerationCap);
  static DensePmf point_mass(const Permutation& p, int cap = kDefaultEnumerationCap);
  static DensePmf from_mixture(const SparseRankingMixture& f, int cap = kDefaultEnumerationCap);
  // Values must be non-negative and sum to one within 1e-10.
  static DensePmf from_values(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](const Permutation& p) const { return values_[p.rank()]; }
  double at_rank(std::size_t r) const { return values_[r]; }

 private:
  DensePmf(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {}
  int n_;
  std::vector<double> values_;
};

double tv_distance(const DensePmf& a, const DensePmf& b);
double tv_distance(const SparseRankingMixture& a, const SparseRankingMixture& b);

// (K*f)(h) = sum_{pi sigma = h} K(pi) f(sigma): the law of compose(pi, sigma).
DensePmf convolve_exact(const DensePmf& noise, const SparseRankingMixture& f,
                        int cap = kDefaultEnumerationCap);
DensePmf convolve_exact(const DensePmf& noise, const DensePmf& f);

// Pr[sigma(i_r) = j_r for all r], tuples 1-based.
double exact_marginal(const SparseRankingMixture& f, std::span<const int> ibar,
                      std::span<const int> jbar);
double exact_marginal(const DensePmf& f, std::span<const int> ibar, std::span<const int> jbar);

Permutation sample(const SparseRankingMixture& f, Rng& rng);

// Uniformly random permutation of S_n.
Permutation random_permutation(int n, Rng& rng);

// k distinct uniformly random atoms; weights epsilon + (1 - k*epsilon) * Dirichlet(1,...,1).
SparseRankingMixture random_heavy_mixture(int n, int k, double epsilon, Rng& rng);

}  // namespace rankmix
