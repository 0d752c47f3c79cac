#include "rankmix/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "rankmix/errors.hpp"

namespace rankmix {

namespace {

constexpr double kMixtureRenormTolerance = 1e-9;
constexpr double kDenseSumTolerance = 1e-10;

void check_marginal_tuples(int n, std::span<const int> ibar, std::span<const int> jbar) {
  if (ibar.size() != jbar.size())
    throw InvalidArgument("marginal tuples must have equal length");
  check_distinct_tuple(n, ibar);
  check_distinct_tuple(n, jbar);
}

bool matches(const Permutation& p, std::span<const int> ibar, std::span<const int> jbar) {
  for (std::size_t r = 0; r < ibar.size(); ++r)
    if (p(ibar[r]) != jbar[r]) return false;
  return true;
}

}  // namespace

SparseRankingMixture::SparseRankingMixture(int n, std::vector<Atom> atoms, std::optional<double> epsilon)
    : n_(n), atoms_(std::move(atoms)), epsilon_(epsilon) {
  if (n < 1) throw InvalidArgument("mixture: n must be positive");
  if (atoms_.empty()) throw InvalidArgument("mixture: no atoms");
  double total = 0.0;
  std::set<Permutation> seen;
  for (const auto& atom : atoms_) {
    if (atom.perm.size() != n)
      throw SizeMismatch("mixture: atom " + atom.perm.to_string() + " is not in S_" + std::to_string(n));
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight))
      throw InvalidArgument("mixture: weights must be positive");
    if (!seen.insert(atom.perm).second)
      throw InvalidArgument("mixture: atom " + atom.perm.to_string() + " repeated");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > kMixtureRenormTolerance)
    throw InvalidArgument("mixture: weights sum to " + std::to_string(total) + ", not 1");
  for (auto& atom : atoms_) atom.weight /= total;
  if (epsilon_) {
    if (!(*epsilon_ > 0.0 && *epsilon_ <= 1.0)) throw InvalidArgument("mixture: epsilon must be in (0,1]");
    for (const auto& atom : atoms_)
      if (atom.weight < *epsilon_ - 1e-12)
        throw InvalidArgument("mixture: atom weight " + std::to_string(atom.weight) +
                              " below heaviness floor " + std::to_string(*epsilon_));
  }
}

SparseRankingMixture SparseRankingMixture::point_mass(const Permutation& p) {
  return SparseRankingMixture(p.size(), {{p, 1.0}});
}

double SparseRankingMixture::weight_of(const Permutation& p) const {
  for (const auto& atom : atoms_)
    if (atom.perm == p) return atom.weight;
  return 0.0;
}

DensePmf DensePmf::uniform(int n, int cap) {
  if (n > cap) throw CapExceeded("DensePmf: n=" + std::to_string(n) + " above cap");
  const std::uint64_t size = factorial(n);
  return DensePmf(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

DensePmf DensePmf::point_mass(const Permutation& p, int cap) {
  if (p.size() > cap) throw CapExceeded("DensePmf: n=" + std::to_string(p.size()) + " above cap");
  std::vector<double> values(factorial(p.size()), 0.0);
  values[p.rank()] = 1.0;
  return DensePmf(p.size(), std::move(values));
}

DensePmf DensePmf::from_mixture(const SparseRankingMixture& f, int cap) {
  if (f.n() > cap) throw CapExceeded("DensePmf: n=" + std::to_string(f.n()) + " above cap");
  std::vector<double> values(factorial(f.n()), 0.0);
  for (const auto& atom : f.atoms()) values[atom.perm.rank()] += atom.weight;
  return DensePmf(f.n(), std::move(values));
}

DensePmf DensePmf::from_values(int n, std::vector<double> values) {
  if (values.size() != factorial(n))
    throw SizeMismatch("DensePmf: expected " + std::to_string(factorial(n)) + " values");
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw InvalidArgument("DensePmf: negative or NaN probability");
    total += v;
  }
  if (std::abs(total - 1.0) > kDenseSumTolerance)
    throw InvalidArgument("DensePmf: values sum to " + std::to_string(total));
  return DensePmf(n, std::move(values));
}

double tv_distance(const DensePmf& a, const DensePmf& b) {
  if (a.n() != b.n()) throw SizeMismatch("tv_distance: different n");
  double sum = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) sum += std::abs(a.at_rank(r) - b.at_rank(r));
  return 0.5 * sum;
}

double tv_distance(const SparseRankingMixture& a, const SparseRankingMixture& b) {
  if (a.n() != b.n()) throw SizeMismatch("tv_distance: different n");
  std::map<Permutation, double> diff;
  for (const auto& atom : a.atoms()) diff[atom.perm] += atom.weight;
  for (const auto& atom : b.atoms()) diff[atom.perm] -= atom.weight;
  double sum = 0.0;
  for (const auto& [perm, d] : diff) sum += std::abs(d);
  return 0.5 * sum;
}

DensePmf convolve_exact(const DensePmf& noise, const SparseRankingMixture& f, int cap) {
  if (noise.n() != f.n()) throw SizeMismatch("convolve_exact: different n");
  if (f.n() > cap) throw CapExceeded("convolve_exact: n above cap");
  const int n = f.n();
  std::vector<double> out(noise.size(), 0.0);
  for (std::size_t r = 0; r < noise.size(); ++r) {
    const double k = noise.at_rank(r);
    if (k == 0.0) continue;
    const Permutation pi = Permutation::unrank(n, r);
    for (const auto& atom : f.atoms()) out[compose(pi, atom.perm).rank()] += k * atom.weight;
  }
  return DensePmf::from_values(n, std::move(out));
}

DensePmf convolve_exact(const DensePmf& noise, const DensePmf& f) {
  if (noise.n() != f.n()) throw SizeMismatch("convolve_exact: different n");
  const int n = f.n();
  std::vector<Permutation> group;
  group.reserve(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) group.push_back(Permutation::unrank(n, r));
  std::vector<double> out(f.size(), 0.0);
  std::vector<int> image(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < noise.size(); ++a) {
    const double k = noise.at_rank(a);
    if (k == 0.0) continue;
    for (std::size_t b = 0; b < f.size(); ++b) {
      const double w = f.at_rank(b);
      if (w == 0.0) continue;
      out[compose(group[a], group[b]).rank()] += k * w;
    }
  }
  return DensePmf::from_values(n, std::move(out));
}

double exact_marginal(const SparseRankingMixture& f, std::span<const int> ibar, std::span<const int> jbar) {
  check_marginal_tuples(f.n(), ibar, jbar);
  double total = 0.0;
  for (const auto& atom : f.atoms())
    if (matches(atom.perm, ibar, jbar)) total += atom.weight;
  return total;
}

double exact_marginal(const DensePmf& f, std::span<const int> ibar, std::span<const int> jbar) {
  check_marginal_tuples(f.n(), ibar, jbar);
  double total = 0.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (f.at_rank(r) == 0.0) continue;
    if (matches(Permutation::unrank(f.n(), r), ibar, jbar)) total += f.at_rank(r);
  }
  return total;
}

Permutation sample(const SparseRankingMixture& f, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  for (const auto& atom : f.atoms()) {
    cumulative += atom.weight;
    if (u < cumulative) return atom.perm;
  }
  return f.atoms().back().perm;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  // Explicit Fisher-Yates so the stream is stable across standard libraries.
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(pick(rng))]);
  }
  return Permutation::from_one_line(image);
}

SparseRankingMixture random_heavy_mixture(int n, int k, double epsilon, Rng& rng) {
  if (k < 1) throw InvalidArgument("random_heavy_mixture: k must be positive");
  if (!(epsilon > 0.0) || k * epsilon > 1.0 + 1e-12)
    throw InvalidArgument("random_heavy_mixture: need 0 < epsilon <= 1/k");
  if (n <= 20 && static_cast<std::uint64_t>(k) > factorial(n))
    throw InvalidArgument("random_heavy_mixture: k exceeds n!");
  std::set<Permutation> chosen;
  std::vector<Atom> atoms;
  while (static_cast<int>(atoms.size()) < k) {
    Permutation p = random_permutation(n, rng);
    if (chosen.insert(p).second) atoms.push_back({std::move(p), 0.0});
  }
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> gaps(static_cast<std::size_t>(k));
  for (auto& g : gaps) g = expo(rng);
  const double gap_total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
  const double free_mass = 1.0 - k * epsilon;
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].weight = epsilon + free_mass * gaps[i] / gap_total;
  return SparseRankingMixture(n, std::move(atoms), epsilon);
}

}  // namespace rankmix
