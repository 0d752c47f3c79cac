#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankmix/partition.hpp"

namespace rankmix {

// Largest n for which exhaustive enumeration of S_n is allowed by default
// (9! = 362880 elements).
inline constexpr int kDefaultEnumerationCap = 9;

// A bijection on {1..n}. Stored 0-based; every public accessor and text
// format is 1-based.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);
  // One-line notation, 1-based: image[i-1] = sigma(i).
  static Permutation from_one_line(std::span<const int> image);
  static Permutation from_one_line(std::initializer_list<int> image);
  // The transposition swapping a and b (1-based, a != b).
  static Permutation transposition(int n, int a, int b);
  // Parses "2,3,1".
  static Permutation parse(std::string_view text);
  // Inverse of rank(): the r-th permutation of S_n in lexicographic order.
  static Permutation unrank(int n, std::uint64_t r);

  int size() const { return static_cast<int>(image_.size()); }

  // sigma(i), both 1-based.
  int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)] + 1; }
  // 0-based access used by the hot loops.
  int at0(int i) const { return image_[static_cast<std::size_t>(i)]; }

  std::vector<int> one_line() const;
  bool is_identity() const;
  // Position in the lexicographic enumeration of S_n.
  std::uint64_t rank() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::int8_t> image) : image_(std::move(image)) {}

  std::vector<std::int8_t> image_;
};

struct CycleType {
  Partition lengths;
  int cycle_count() const { return lengths.length(); }
  int n() const { return lengths.weight(); }
};

// (a*b)(i) = a(b(i)): b is applied first.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

int cycle_count(const Permutation& a);
CycleType cycle_type(const Permutation& a);

// Minimum number of transpositions turning b into a; equals
// n - cycles(a * b^-1).
int cayley_distance(const Permutation& a, const Permutation& b);

std::uint64_t factorial(int n);

// All of S_n in lexicographic order (identity first).
std::vector<Permutation> enumerate_sn(int n, int cap = kDefaultEnumerationCap);

// Throws InvalidArgument unless every entry is in 1..n and entries are
// pairwise distinct.
void check_distinct_tuple(int n, std::span<const int> tuple);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace rankmix
