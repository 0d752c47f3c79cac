#include "rankmix/lower_bound.hpp"

#include <algorithm>
#include <cmath>

#include "rankmix/characters.hpp"
#include "rankmix/errors.hpp"
#include "rankmix/noise.hpp"

namespace rankmix {

namespace {

SparseRankingMixture part_of(const std::vector<Permutation>& perms, const std::vector<std::int64_t>& chi,
                             std::int64_t c_sq, int sign) {
  std::vector<Atom> atoms;
  for (std::size_t r = 0; r < perms.size(); ++r) {
    const std::int64_t v = chi[r] * sign;
    if (v > 0) atoms.push_back(Atom{perms[r], static_cast<double>(v) / static_cast<double>(c_sq)});
  }
  return SparseRankingMixture(perms.front().size(), std::move(atoms));
}

}  // namespace

HardPair build_hard_pair(int t, int j, int cap) {
  if (j < 1 || t < j) throw InvalidArgument("build_hard_pair: need t >= j >= 1");
  const int m = t * (t + j);
  if (m > cap) throw CapExceeded("build_hard_pair: m = " + std::to_string(m) + " exceeds the enumeration cap");

  const Partition shape(std::vector<int>(static_cast<std::size_t>(t + j), t));
  const auto perms = enumerate_sn(m, cap);
  std::vector<std::int64_t> chi;
  chi.reserve(perms.size());
  std::int64_t positive = 0;
  std::int64_t negative = 0;
  for (const auto& p : perms) {
    const std::int64_t v = character(shape, cycle_type(p));
    chi.push_back(v);
    (v > 0 ? positive : negative) += v;
  }
  if (positive != -negative || positive <= 0)
    throw ContractError("build_hard_pair: character does not sum to zero");
  SparseRankingMixture f1 = part_of(perms, chi, positive, 1);
  SparseRankingMixture f2 = part_of(perms, chi, positive, -1);
  return HardPair{t, j, m, shape, std::move(chi), positive, std::move(f1), std::move(f2)};
}

SquareMultiplier square_multiplier(const HardPair& pair, double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("square_multiplier: theta must be finite");
  SquareMultiplier out;
  const double q = std::exp(theta);
  out.value = mallows_multiplier(q, pair.shape);
  out.eta = std::abs(q - pair.j);
  out.bound = std::pow(out.eta, pair.t);
  out.bound_applies = out.eta <= 0.5;
  return out;
}

Separation verify_separation(const HardPair& pair, double theta, int cap) {
  const SquareMultiplier c = square_multiplier(pair, theta);
  const DensePmf noise = mallows_pmf(pair.m, std::exp(theta), cap);
  const DensePmf a = convolve_exact(noise, pair.f1, cap);
  const DensePmf b = convolve_exact(noise, pair.f2, cap);
  Separation out;
  out.theta = theta;
  out.eta = c.eta;
  out.multiplier = c.value;
  out.tv = tv_distance(a, b);
  out.bound = 2.0 * c.bound;
  out.bound_applies = c.bound_applies;
  out.pass = !out.bound_applies || out.tv <= out.bound + 1e-12;
  return out;
}

DistinguisherResult likelihood_distinguisher(const HardPair& pair, double theta, int samples, int trials, Rng& rng,
                                             int cap) {
  if (samples < 1 || trials < 1) throw InvalidArgument("likelihood_distinguisher: need samples, trials >= 1");
  const DensePmf noise = mallows_pmf(pair.m, std::exp(theta), cap);
  const DensePmf p1 = convolve_exact(noise, pair.f1, cap);
  const DensePmf p2 = convolve_exact(noise, pair.f2, cap);
  std::vector<double> cdf1(p1.size());
  std::vector<double> cdf2(p2.size());
  double acc1 = 0.0;
  double acc2 = 0.0;
  for (std::size_t r = 0; r < p1.size(); ++r) {
    cdf1[r] = acc1 += p1.at_rank(r);
    cdf2[r] = acc2 += p2.at_rank(r);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  DistinguisherResult out;
  out.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const bool first = coin(rng);
    const auto& cdf = first ? cdf1 : cdf2;
    double llr = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double u = unit(rng) * cdf.back();
      auto r = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      r = std::min(r, cdf.size() - 1);
      llr += std::log(p1.at_rank(r)) - std::log(p2.at_rank(r));
    }
    if ((llr > 0.0) == first) ++out.correct;
  }
  out.accuracy = static_cast<double>(out.correct) / trials;
  return out;
}

}  // namespace rankmix
