#include "rankmix/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "rankmix/errors.hpp"

namespace rankmix {

namespace {

constexpr int kMaxDegree = 127;

void check_degree(int n) {
  if (n < 1 || n > kMaxDegree)
    throw InvalidArgument("permutation degree must be in [1, 127], got " + std::to_string(n));
}

}  // namespace

Permutation Permutation::identity(int n) {
  check_degree(n);
  std::vector<std::int8_t> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), std::int8_t{0});
  return Permutation(std::move(image));
}

Permutation Permutation::from_one_line(std::span<const int> image) {
  const int n = static_cast<int>(image.size());
  check_degree(n);
  std::vector<std::int8_t> stored(image.size());
  std::vector<bool> seen(image.size(), false);
  for (std::size_t i = 0; i < image.size(); ++i) {
    const int v = image[i];
    if (v < 1 || v > n)
      throw InvalidArgument("permutation value " + std::to_string(v) + " out of range 1.." +
                            std::to_string(n));
    if (seen[static_cast<std::size_t>(v - 1)])
      throw InvalidArgument("permutation value " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v - 1)] = true;
    stored[i] = static_cast<std::int8_t>(v - 1);
  }
  return Permutation(std::move(stored));
}

Permutation Permutation::from_one_line(std::initializer_list<int> image) {
  return from_one_line(std::span<const int>(image.begin(), image.size()));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a == b || a < 1 || b < 1 || a > n || b > n)
    throw InvalidArgument("transposition needs two distinct points in 1.." + std::to_string(n));
  Permutation p = identity(n);
  std::swap(p.image_[static_cast<std::size_t>(a - 1)], p.image_[static_cast<std::size_t>(b - 1)]);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\r')) token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw InvalidArgument("malformed permutation \"" + std::string(text) + "\"");
    values.push_back(value);
    pos = end + 1;
  }
  return from_one_line(values);
}

Permutation Permutation::unrank(int n, std::uint64_t r) {
  check_degree(n);
  if (n > 20) throw CapExceeded("unrank supports n <= 20");
  if (r >= factorial(n)) throw InvalidArgument("rank out of range");
  std::vector<std::int8_t> remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), std::int8_t{0});
  std::vector<std::int8_t> image;
  image.reserve(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t block = factorial(i);
    const auto digit = static_cast<std::size_t>(r / block);
    r %= block;
    image.push_back(remaining[digit]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Permutation(std::move(image));
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[i] + 1;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != static_cast<std::int8_t>(i)) return false;
  return true;
}

std::uint64_t Permutation::rank() const {
  const int n = size();
  if (n > 20) throw CapExceeded("rank supports n <= 20");
  // Lehmer code: count smaller values to the right.
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (image_[static_cast<std::size_t>(j)] < image_[static_cast<std::size_t>(i)]) ++smaller;
    r = r * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
  }
  return r;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(image_[i] + 1);
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw SizeMismatch("compose: sizes " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()));
  std::vector<int> image(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) image[static_cast<std::size_t>(i)] = a.at0(b.at0(i)) + 1;
  return Permutation::from_one_line(image);
}

Permutation inverse(const Permutation& a) {
  std::vector<int> image(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) image[static_cast<std::size_t>(a.at0(i))] = i + 1;
  return Permutation::from_one_line(image);
}

int cycle_count(const Permutation& a) {
  const int n = a.size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = a.at0(j)) seen[static_cast<std::size_t>(j)] = true;
  }
  return cycles;
}

CycleType cycle_type(const Permutation& a) {
  const int n = a.size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> lengths;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = a.at0(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return CycleType{Partition(std::move(lengths))};
}

int cayley_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw SizeMismatch("cayley_distance: sizes " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()));
  return a.size() - cycle_count(compose(a, inverse(b)));
}

std::uint64_t factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of negative number");
  if (n > 20) throw Overflow("factorial(" + std::to_string(n) + ") exceeds 64 bits");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<Permutation> enumerate_sn(int n, int cap) {
  if (n < 1) throw InvalidArgument("enumerate_sn: n must be positive");
  if (n > cap)
    throw CapExceeded("enumerate_sn: n=" + std::to_string(n) + " above enumeration cap " +
                      std::to_string(cap));
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.push_back(Permutation::from_one_line(image));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

void check_distinct_tuple(int n, std::span<const int> tuple) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : tuple) {
    if (v < 1 || v > n)
      throw InvalidArgument("tuple entry " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v - 1)])
      throw InvalidArgument("tuple entry " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.size());
  for (int i = 0; i < p.size(); ++i) h = h * 131 + static_cast<std::size_t>(p.at0(i));
  return h;
}

}  // namespace rankmix
