#include "rankmix/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "rankmix/errors.hpp"

namespace rankmix {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw InvalidArgument("partition parts must be weakly decreasing");
  }
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return Partition();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw InvalidArgument("malformed partition \"" + std::string(text) + "\"");
    parts.push_back(value);
    pos = end + 1;
  }
  return Partition(std::move(parts));
}

Partition Partition::trivial(int j) {
  if (j < 0) throw InvalidArgument("trivial partition of negative size");
  return j == 0 ? Partition() : Partition({j});
}

int Partition::column(int j) const {
  int len = 0;
  while (len < length() && parts_[static_cast<std::size_t>(len)] > j) ++len;
  return len;
}

bool Partition::contains(const Partition& other) const {
  if (other.length() > length()) return false;
  for (int i = 0; i < other.length(); ++i)
    if (other.row(i) > row(i)) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                b.parts_.end());
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0;
  for (int part : p.parts()) h = h * 37 + static_cast<std::size_t>(part);
  return h;
}

std::vector<Partition> all_partitions(int n) {
  if (n < 1) throw InvalidArgument("all_partitions: n must be positive");
  if (n > kMaxPartitionWeight)
    throw CapExceeded("all_partitions: n=" + std::to_string(n) + " above " +
                      std::to_string(kMaxPartitionWeight));
  std::vector<Partition> out;
  std::vector<int> current;
  // Largest part first, each subsequent part at most the previous one; this
  // visits partitions in decreasing lexicographic order.
  std::function<void(int, int)> extend = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      extend(remaining - part, part);
      current.pop_back();
    }
  };
  extend(n, n);
  return out;
}

bool dominates(const Partition& mu, const Partition& lambda) {
  if (mu.weight() != lambda.weight())
    throw SizeMismatch("dominates: weights " + std::to_string(mu.weight()) + " and " +
                       std::to_string(lambda.weight()));
  int sum_mu = 0;
  int sum_lambda = 0;
  const int rows = std::max(mu.length(), lambda.length());
  for (int i = 0; i < rows; ++i) {
    sum_mu += mu.row(i);
    sum_lambda += lambda.row(i);
    if (sum_mu < sum_lambda) return false;
  }
  return true;
}

std::vector<CellAnnotation> cell_annotations(const Partition& lambda) {
  std::vector<CellAnnotation> cells;
  cells.reserve(static_cast<std::size_t>(lambda.weight()));
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda.row(i); ++j) {
      const int arm = lambda.row(i) - j - 1;
      const int leg = lambda.column(j) - i - 1;
      cells.push_back({i + 1, j + 1, arm + leg + 1, j - i});
    }
  }
  return cells;
}

std::uint64_t irrep_dimension(const Partition& lambda) {
  if (lambda.weight() > kMaxPartitionWeight)
    throw CapExceeded("irrep_dimension: weight above " + std::to_string(kMaxPartitionWeight));
  // 30! < 2^108, so the numerator fits in 128 bits.
  unsigned __int128 numerator = 1;
  for (int i = 2; i <= lambda.weight(); ++i) numerator *= static_cast<unsigned>(i);
  unsigned __int128 hooks = 1;
  for (const auto& cell : cell_annotations(lambda)) hooks *= static_cast<unsigned>(cell.hook);
  const unsigned __int128 dim = numerator / hooks;
  if (dim * hooks != numerator) throw Overflow("irrep_dimension: hook product does not divide n!");
  if (dim > std::numeric_limits<std::uint64_t>::max())
    throw Overflow("irrep_dimension exceeds 64 bits for " + lambda.to_string());
  return static_cast<std::uint64_t>(dim);
}

std::uint64_t lattice_paths(const Partition& mu, const Partition& lambda) {
  if (mu.weight() > lambda.weight()) return 0;
  if (!lambda.contains(mu)) return 0;
  // memo[nu] = number of chains nu -> lambda; nu ranges over partitions
  // between mu and lambda.
  std::map<std::vector<int>, std::uint64_t> memo;
  std::function<std::uint64_t(std::vector<int>&)> count = [&](std::vector<int>& nu) -> std::uint64_t {
    int weight = std::accumulate(nu.begin(), nu.end(), 0);
    if (weight == lambda.weight()) return 1;  // nu is contained in lambda with equal weight
    if (auto it = memo.find(nu); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    const int rows = static_cast<int>(nu.size());
    for (int i = 0; i <= rows; ++i) {
      const int current = i < rows ? nu[static_cast<std::size_t>(i)] : 0;
      const int above = i == 0 ? std::numeric_limits<int>::max() : nu[static_cast<std::size_t>(i - 1)];
      if (current + 1 > above || current + 1 > lambda.row(i)) continue;
      if (i < rows) {
        ++nu[static_cast<std::size_t>(i)];
      } else {
        nu.push_back(1);
      }
      const std::uint64_t sub = count(nu);
      if (i < rows) {
        --nu[static_cast<std::size_t>(i)];
      } else {
        nu.pop_back();
      }
      if (__builtin_add_overflow(total, sub, &total))
        throw Overflow("lattice_paths exceeds 64 bits");
    }
    memo.emplace(nu, total);
    return total;
  };
  std::vector<int> start = mu.parts();
  return count(start);
}

Partition hook_partition(int n, int ell) {
  if (n < 1) throw InvalidArgument("hook_partition: n must be positive");
  if (ell < 0 || ell >= n)
    throw InvalidArgument("hook_partition: ell=" + std::to_string(ell) + " must be in [0, " +
                          std::to_string(n - 1) + "]");
  std::vector<int> parts{n - ell};
  parts.insert(parts.end(), static_cast<std::size_t>(ell), 1);
  return Partition(std::move(parts));
}

std::vector<Partition> up_set(const Partition& lambda) {
  std::vector<Partition> out;
  for (auto& mu : all_partitions(lambda.weight()))
    if (dominates(mu, lambda)) out.push_back(std::move(mu));
  return out;
}

}  // namespace rankmix
