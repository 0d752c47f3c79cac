#include "rankmix/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankmix/characters.hpp"
#include "rankmix/errors.hpp"

namespace rankmix {

namespace {

constexpr double kPbarTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_n(int n) {
  if (n < 1) throw InvalidArgument("noise model: n must be positive");
}

// Inverse-CDF draw of an index from non-negative weights summing to one.
std::size_t draw_index(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return i;
  return probs.size() - 1;
}

Permutation sample_symmetric(int n, const SymmetricNoise& noise, Rng& rng) {
  const int j = static_cast<int>(draw_index(noise.pbar, rng));
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: pool[0..j) is a uniform j-subset.
  for (int i = 0; i < j; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> scrambled(pool.begin(), pool.begin() + j);
  for (int i = j - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(scrambled[static_cast<std::size_t>(i)], scrambled[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  for (int i = 0; i < j; ++i)
    image[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = scrambled[static_cast<std::size_t>(i)] + 1;
  return Permutation::from_one_line(image);
}

// One step of the lazy walk applied on the left: an ordered pair (a, b) is
// uniform on [n]^2; a == b holds (probability 1/n), otherwise swap values
// a and b (probability 2/n^2 per transposition).
void transposition_step(std::vector<int>& image, Rng& rng) {
  const int n = static_cast<int>(image.size());
  std::uniform_int_distribution<int> pick(1, n);
  const int a = pick(rng);
  const int b = pick(rng);
  if (a == b) return;
  for (int& v : image) {
    if (v == a) {
      v = b;
    } else if (v == b) {
      v = a;
    }
  }
}

Permutation sample_heat(int n, const HeatKernelNoise& noise, Rng& rng) {
  std::poisson_distribution<long> poisson(noise.t);
  const long steps = poisson(rng);
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  for (long s = 0; s < steps; ++s) transposition_step(image, rng);
  return Permutation::from_one_line(image);
}

DensePmf symmetric_pmf(int n, const SymmetricNoise& noise) {
  std::vector<double> values(factorial(n), 0.0);
  for (int j = 0; j <= n; ++j) {
    const double pj = noise.pbar[static_cast<std::size_t>(j)];
    if (pj == 0.0) continue;
    // Enumerate j-subsets via a selection mask, then every arrangement of it.
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    std::fill(mask.begin(), mask.begin() + j, true);
    double subsets = 0.0;
    std::vector<std::vector<int>> chosen;
    do {
      std::vector<int> subset;
      for (int i = 0; i < n; ++i)
        if (mask[static_cast<std::size_t>(i)]) subset.push_back(i + 1);
      chosen.push_back(std::move(subset));
      subsets += 1.0;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    const double each = pj / (subsets * static_cast<double>(factorial(j)));
    for (const auto& subset : chosen) {
      std::vector<int> arrangement = subset;
      do {
        std::vector<int> image(static_cast<std::size_t>(n));
        std::iota(image.begin(), image.end(), 1);
        for (std::size_t r = 0; r < subset.size(); ++r)
          image[static_cast<std::size_t>(subset[r] - 1)] = arrangement[r];
        values[Permutation::from_one_line(image).rank()] += each;
      } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    }
  }
  return DensePmf::from_values(n, std::move(values));
}

DensePmf heat_pmf(int n, const HeatKernelNoise& noise, int cap) {
  const DensePmf step = transposition_walk_pmf(n, cap);
  const std::size_t size = step.size();
  // left[tau][r] = rank(tau * g_r) for each transposition tau.
  std::vector<std::pair<double, std::vector<std::uint32_t>>> left;
  const std::vector<Permutation> group = enumerate_sn(n, cap);
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const Permutation tau = Permutation::transposition(n, a, b);
      std::vector<std::uint32_t> table(size);
      for (std::size_t r = 0; r < size; ++r) table[r] = static_cast<std::uint32_t>(compose(tau, group[r]).rank());
      left.emplace_back(step[tau], std::move(table));
    }
  }
  const double hold = 1.0 / n;

  const int terms = poisson_truncation(noise.t);
  std::vector<double> walk(size, 0.0);
  walk[0] = 1.0;  // identity has rank 0
  std::vector<double> acc(size, 0.0);
  std::vector<double> next(size);
  double poisson = std::exp(-noise.t);
  for (int j = 0; j <= terms; ++j) {
    if (j > 0) poisson *= noise.t / j;
    for (std::size_t r = 0; r < size; ++r) acc[r] += poisson * walk[r];
    if (j == terms) break;
    for (std::size_t r = 0; r < size; ++r) next[r] = hold * walk[r];
    for (const auto& [prob, table] : left)
      for (std::size_t r = 0; r < size; ++r) next[table[r]] += prob * walk[r];
    walk.swap(next);
  }
  const double total = std::accumulate(acc.begin(), acc.end(), 0.0);
  for (double& v : acc) v /= total;
  return DensePmf::from_values(n, std::move(acc));
}

}  // namespace

NoiseModel NoiseModel::symmetric(int n, std::vector<double> pbar) {
  check_n(n);
  if (pbar.size() != static_cast<std::size_t>(n) + 1)
    throw InvalidArgument("symmetric noise: pbar needs n+1 = " + std::to_string(n + 1) + " entries");
  double total = 0.0;
  for (double p : pbar) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("symmetric noise: pbar entries must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kPbarTolerance)
    throw InvalidArgument("symmetric noise: pbar sums to " + std::to_string(total));
  return NoiseModel(n, SymmetricNoise{std::move(pbar)});
}

NoiseModel NoiseModel::heat_kernel(int n, double t) {
  check_n(n);
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("heat kernel: t must be positive");
  return NoiseModel(n, HeatKernelNoise{t});
}

NoiseModel NoiseModel::cayley_mallows(int n, double theta) {
  check_n(n);
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("Cayley-Mallows: theta must be positive");
  return NoiseModel(n, CayleyMallowsNoise{theta});
}

NoiseKind NoiseModel::kind() const {
  return std::visit(Overloaded{[](const SymmetricNoise&) { return NoiseKind::Symmetric; },
                               [](const HeatKernelNoise&) { return NoiseKind::HeatKernel; },
                               [](const CayleyMallowsNoise&) { return NoiseKind::CayleyMallows; }},
                    params_);
}

std::string NoiseModel::name() const {
  switch (kind()) {
    case NoiseKind::Symmetric:
      return "symmetric";
    case NoiseKind::HeatKernel:
      return "heat";
    case NoiseKind::CayleyMallows:
      return "mallows";
  }
  return "unknown";
}

int poisson_truncation(double t) {
  double pmf = std::exp(-t);
  double cdf = pmf;
  int j = 0;
  while (1.0 - cdf >= kPoissonTailCutoff && j < 100000) {
    ++j;
    pmf *= t / j;
    cdf += pmf;
    // exp(-t) underflows for large t; past the mode the remaining tail is
    // below the cutoff once the pmf term itself is negligible.
    if (pmf < kPoissonTailCutoff * 1e-3 && j > t) break;
  }
  return j;
}

DensePmf transposition_walk_pmf(int n, int cap) {
  if (n > cap) throw CapExceeded("transposition_walk_pmf: n above cap");
  std::vector<double> values(factorial(n), 0.0);
  values[0] = 1.0 / n;
  const double each = 2.0 / (static_cast<double>(n) * n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) values[Permutation::transposition(n, a, b).rank()] = each;
  return DensePmf::from_values(n, std::move(values));
}

DensePmf mallows_pmf(int n, double q, int cap) {
  if (!(q > 0.0)) throw InvalidArgument("mallows_pmf: q must be positive");
  if (n > cap) throw CapExceeded("mallows_pmf: n above cap");
  double log_normalizer = 0.0;
  for (int i = 0; i < n; ++i) log_normalizer += std::log(q + i);
  const double log_q = std::log(q);
  std::vector<double> by_cycles(static_cast<std::size_t>(n) + 1);
  for (int c = 1; c <= n; ++c) by_cycles[static_cast<std::size_t>(c)] = std::exp(c * log_q - log_normalizer);
  std::vector<double> values(factorial(n));
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  std::size_t r = 0;
  do {
    values[r++] = by_cycles[static_cast<std::size_t>(cycle_count(Permutation::from_one_line(image)))];
  } while (std::next_permutation(image.begin(), image.end()));
  // Summation error only; the closed-form normalizer is exact.
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  for (double& v : values) v /= total;
  return DensePmf::from_values(n, std::move(values));
}

DensePmf noise_pmf_exact(const NoiseModel& model, int cap) {
  const int n = model.n();
  if (n > cap) throw CapExceeded("noise_pmf_exact: n=" + std::to_string(n) + " above cap");
  return std::visit(Overloaded{[&](const SymmetricNoise& s) { return symmetric_pmf(n, s); },
                               [&](const HeatKernelNoise& h) { return heat_pmf(n, h, cap); },
                               [&](const CayleyMallowsNoise& m) { return mallows_pmf(n, std::exp(m.theta), cap); }},
                    model.params());
}

long default_burn_in(int n) {
  const long log_n = static_cast<long>(std::ceil(std::log(static_cast<double>(std::max(n, 2)))));
  return 20L * n * log_n;
}

NoiseSampler::NoiseSampler(NoiseModel model, SamplerOptions options)
    : model_(std::move(model)), options_(options) {
  if (model_.kind() == NoiseKind::CayleyMallows && model_.n() <= options_.enumeration_cap) {
    const DensePmf pmf = noise_pmf_exact(model_, options_.enumeration_cap);
    cdf_.resize(pmf.size());
    std::partial_sum(pmf.values().begin(), pmf.values().end(), cdf_.begin());
  }
}

Permutation NoiseSampler::operator()(Rng& rng) const {
  const int n = model_.n();
  return std::visit(
      Overloaded{[&](const SymmetricNoise& s) { return sample_symmetric(n, s, rng); },
                 [&](const HeatKernelNoise& h) { return sample_heat(n, h, rng); },
                 [&](const CayleyMallowsNoise& m) {
                   if (!cdf_.empty()) {
                     std::uniform_real_distribution<double> unit(0.0, cdf_.back());
                     const double u = unit(rng);
                     auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
                     if (it == cdf_.end()) --it;
                     return Permutation::unrank(n, static_cast<std::uint64_t>(it - cdf_.begin()));
                   }
                   const long steps = options_.burn_in > 0 ? options_.burn_in : default_burn_in(n);
                   return sample_mallows_metropolis(m.theta, n, steps, rng);
                 }},
      model_.params());
}

Permutation sample_noise(const NoiseModel& model, Rng& rng, SamplerOptions options) {
  return NoiseSampler(model, options)(rng);
}

Permutation sample_mallows_metropolis(double theta, int n, long steps, Rng& rng) {
  if (steps < 1) throw InvalidArgument("Metropolis: steps must be >= 1");
  if (!(theta > 0.0)) throw InvalidArgument("Metropolis: theta must be positive");
  if (n < 2) return Permutation::identity(n);
  const double q = std::exp(theta);
  std::vector<int> current(static_cast<std::size_t>(n));
  std::iota(current.begin(), current.end(), 1);
  int cycles = n;
  std::uniform_int_distribution<int> first(1, n);
  std::uniform_int_distribution<int> second(1, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> proposal(current.size());
  for (long s = 0; s < steps; ++s) {
    const int a = first(rng);
    int b = second(rng);
    if (b >= a) ++b;
    proposal = current;
    for (int& v : proposal) {
      if (v == a) {
        v = b;
      } else if (v == b) {
        v = a;
      }
    }
    const int proposal_cycles = cycle_count(Permutation::from_one_line(proposal));
    const double accept = mallows_acceptance(q, proposal_cycles - cycles);
    if (accept >= 1.0 || unit(rng) < accept) {
      current.swap(proposal);
      cycles = proposal_cycles;
    }
  }
  return Permutation::from_one_line(current);
}

double transposition_walk_multiplier(const Partition& mu) {
  const double n = mu.weight();
  return 1.0 / n + ((n - 1.0) / n) * boost::rational_cast<double>(transposition_ratio(mu));
}

double mallows_multiplier(double q, const Partition& mu) {
  double value = 1.0;
  int i = 0;
  for (const auto& cell : cell_annotations(mu)) {
    value *= (q + cell.content) / (q + i);
    ++i;
  }
  return value;
}

Multiplier multiplier(const NoiseModel& model, const Partition& mu) {
  if (mu.weight() != model.n())
    throw SizeMismatch("multiplier: partition weight " + std::to_string(mu.weight()) + " vs n=" +
                       std::to_string(model.n()));
  const double value = std::visit(
      Overloaded{[&](const SymmetricNoise& s) {
                   double sum = 0.0;
                   for (int j = 0; j <= model.n(); ++j) {
                     const double pj = s.pbar[static_cast<std::size_t>(j)];
                     if (pj == 0.0) continue;
                     sum += pj * static_cast<double>(lattice_paths(Partition::trivial(j), mu));
                   }
                   return sum / static_cast<double>(irrep_dimension(mu));
                 },
                 [&](const HeatKernelNoise& h) {
                   if (model.n() < 2) return 1.0;
                   return std::exp(-h.t * (1.0 - transposition_walk_multiplier(mu)));
                 },
                 [&](const CayleyMallowsNoise& m) { return mallows_multiplier(std::exp(m.theta), mu); }},
      model.params());
  return Multiplier{mu, value};
}

double min_multiplier_up(const NoiseModel& model, int ell) {
  const Partition hook = hook_partition(model.n(), ell);
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& mu : up_set(hook)) smallest = std::min(smallest, std::abs(multiplier(model, mu).value));
  return smallest;
}

double dist_theta(double theta, int ell) {
  if (ell < 1) throw InvalidArgument("dist_theta: ell must be >= 1");
  const double q = std::exp(theta);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= ell; ++j) best = std::min(best, std::abs(q - j));
  return best;
}

}  // namespace rankmix
