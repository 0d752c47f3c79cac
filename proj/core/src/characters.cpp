#include "rankmix/characters.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rankmix/errors.hpp"

namespace rankmix {

namespace {

// Beta-set (first-column hook lengths) of a partition padded to `len` rows.
std::vector<int> beta_set(const std::vector<int>& parts, int len) {
  std::vector<int> beta(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    const int part = i < static_cast<int>(parts.size()) ? parts[static_cast<std::size_t>(i)] : 0;
    beta[static_cast<std::size_t>(i)] = part + (len - 1 - i);
  }
  return beta;
}

std::vector<int> from_beta_set(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    const int part = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (part > 0) parts.push_back(part);
  }
  return parts;
}

using MemoKey = std::pair<std::vector<int>, std::vector<int>>;

// Removes a border strip of length rho[0] from lambda in every possible way,
// signed by (-1)^{height}, then recurses on the remaining cycle lengths.
std::int64_t murnaghan_nakayama(const std::vector<int>& lambda, const std::vector<int>& rho,
                                std::map<MemoKey, std::int64_t>& memo) {
  if (rho.empty()) return lambda.empty() ? 1 : 0;
  MemoKey key{lambda, rho};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const int strip = rho.front();
  const std::vector<int> rest(rho.begin() + 1, rho.end());
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta = beta_set(lambda, len);

  std::int64_t total = 0;
  for (int i = 0; i < len; ++i) {
    const int from = beta[static_cast<std::size_t>(i)];
    const int to = from - strip;
    if (to < 0) continue;
    if (std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int crossed = 0;
    for (int b : beta)
      if (b > to && b < from) ++crossed;
    std::vector<int> moved = beta;
    moved[static_cast<std::size_t>(i)] = to;
    const std::int64_t sub = murnaghan_nakayama(from_beta_set(std::move(moved)), rest, memo);
    total += (crossed % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::int64_t character(const Partition& lambda, const Partition& cycle_lengths) {
  if (lambda.weight() != cycle_lengths.weight())
    throw SizeMismatch("character: partition weight " + std::to_string(lambda.weight()) +
                       " vs cycle type weight " + std::to_string(cycle_lengths.weight()));
  thread_local std::map<MemoKey, std::int64_t> memo;
  return murnaghan_nakayama(lambda.parts(), cycle_lengths.parts(), memo);
}

std::int64_t character(const Partition& lambda, const CycleType& ct) {
  return character(lambda, ct.lengths);
}

Rational transposition_ratio(const Partition& mu) {
  const std::int64_t n = mu.weight();
  if (n < 2) throw InvalidArgument("transposition_ratio needs n >= 2");
  std::int64_t sum = 0;
  for (int j = 1; j <= mu.length(); ++j) {
    const std::int64_t m = mu.row(j - 1);
    sum += (m - j) * (m - j + 1) - static_cast<std::int64_t>(j) * (j - 1);
  }
  return Rational(sum, n * (n - 1));
}

std::uint64_t class_size(const Partition& cycle_lengths) {
  std::uint64_t centralizer = 1;
  std::map<int, int> multiplicity;
  for (int len : cycle_lengths.parts()) ++multiplicity[len];
  for (auto [len, m] : multiplicity) {
    for (int i = 0; i < m; ++i) centralizer *= static_cast<std::uint64_t>(len);
    centralizer *= factorial(m);
  }
  return factorial(cycle_lengths.weight()) / centralizer;
}

std::size_t CharacterTable::index_of(const Partition& p) const {
  auto it = std::find(partitions_.begin(), partitions_.end(), p);
  if (it == partitions_.end()) throw InvalidArgument("partition " + p.to_string() + " not in table");
  return static_cast<std::size_t>(it - partitions_.begin());
}

CharacterTable character_table(int n, int cap) {
  if (n > cap)
    throw CapExceeded("character_table: n=" + std::to_string(n) + " above cap " + std::to_string(cap));
  CharacterTable table;
  table.n_ = n;
  table.partitions_ = all_partitions(n);
  const std::size_t p = table.partitions_.size();
  table.values_.resize(p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t c = 0; c < p; ++c)
      table.values_[i * p + c] = character(table.partitions_[i], table.partitions_[c]);
  for (const auto& cls : table.partitions_) table.class_sizes_.push_back(class_size(cls));
  return table;
}

}  // namespace rankmix
