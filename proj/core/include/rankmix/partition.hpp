#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankmix {

inline constexpr int kMaxPartitionWeight = 30;

// A weakly decreasing sequence of positive integers (a Young diagram).
// The empty partition of 0 is allowed.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  // Parses "3,1,1"; an empty string is the empty partition.
  static Partition parse(std::string_view text);
  // (j), the one-row diagram; trivial(0) is the empty partition.
  static Partition trivial(int j);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // Row length, 0-based row; 0 past the last row.
  int row(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }
  // Column length, 0-based column.
  int column(int j) const;
  bool contains(const Partition& other) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // Lexicographic on parts.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

struct CellAnnotation {
  int row;  // 1-based
  int col;  // 1-based
  int hook;
  int content;  // col - row
};

// All partitions of n in reverse lexicographic order: (n), (n-1,1), ...
std::vector<Partition> all_partitions(int n);

// Dominance order: mu >= lambda iff every prefix sum of mu is at least the
// matching prefix sum of lambda.
bool dominates(const Partition& mu, const Partition& lambda);

// Row-major.
std::vector<CellAnnotation> cell_annotations(const Partition& lambda);

// Hook length formula n!/prod h(u). Throws Overflow if the result does not
// fit in 64 bits.
std::uint64_t irrep_dimension(const Partition& lambda);

// Number of saturated chains mu = nu_0 < nu_1 < ... < nu_r = lambda in
// Young's lattice, each step adding one box. Zero when mu is not contained
// in lambda.
std::uint64_t lattice_paths(const Partition& mu, const Partition& lambda);

// (n - ell, 1^ell).
Partition hook_partition(int n, int ell);

// {mu |- n : mu dominates lambda}, including lambda, reverse lexicographic.
std::vector<Partition> up_set(const Partition& lambda);

}  // namespace rankmix
