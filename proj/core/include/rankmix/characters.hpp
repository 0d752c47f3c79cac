#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "rankmix/partition.hpp"
#include "rankmix/permutation.hpp"

namespace rankmix {

using Rational = boost::rational<std::int64_t>;

// chi_lambda on the class with the given cycle type, by the
// Murnaghan-Nakayama rule. Exact; memoized per thread.
std::int64_t character(const Partition& lambda, const CycleType& ct);
std::int64_t character(const Partition& lambda, const Partition& cycle_lengths);

// chi_mu(transposition) / dim(rho_mu) in closed form:
//   (1/(n(n-1))) * sum_j [(mu_j - j)(mu_j - j + 1) - j(j - 1)].
Rational transposition_ratio(const Partition& mu);

// Number of permutations with the given cycle type: n! / prod_i i^{m_i} m_i!.
std::uint64_t class_size(const Partition& cycle_lengths);

// Rows indexed by irreducibles, columns by classes; both enumerate
// all_partitions(n) in the same order.
class CharacterTable {
 public:
  int n() const { return n_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::int64_t value(std::size_t irrep, std::size_t cls) const {
    return values_[irrep * partitions_.size() + cls];
  }
  std::uint64_t class_size(std::size_t cls) const { return class_sizes_[cls]; }
  std::size_t index_of(const Partition& p) const;

 private:
  friend CharacterTable character_table(int n, int cap);
  int n_ = 0;
  std::vector<Partition> partitions_;
  std::vector<std::int64_t> values_;
  std::vector<std::uint64_t> class_sizes_;
};

CharacterTable character_table(int n, int cap = kDefaultEnumerationCap);

}  // namespace rankmix
