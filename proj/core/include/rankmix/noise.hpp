#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rankmix/distribution.hpp"
#include "rankmix/partition.hpp"

namespace rankmix {

// Scramble a uniformly random j-subset, j drawn from pbar = (p_0..p_n).
struct SymmetricNoise {
  std::vector<double> pbar;
};

// Poisson(t) steps of the lazy random-transposition walk.
struct HeatKernelNoise {
  double t;
};

// Probability proportional to q^{cycles(pi)}, q = e^theta.
struct CayleyMallowsNoise {
  double theta;
};

enum class NoiseKind { Symmetric, HeatKernel, CayleyMallows };

class NoiseModel {
 public:
  static NoiseModel symmetric(int n, std::vector<double> pbar);
  static NoiseModel heat_kernel(int n, double t);
  static NoiseModel cayley_mallows(int n, double theta);

  int n() const { return n_; }
  NoiseKind kind() const;
  std::string name() const;
  const std::variant<SymmetricNoise, HeatKernelNoise, CayleyMallowsNoise>& params() const { return params_; }

 private:
  NoiseModel(int n, std::variant<SymmetricNoise, HeatKernelNoise, CayleyMallowsNoise> params)
      : n_(n), params_(std::move(params)) {}
  int n_;
  std::variant<SymmetricNoise, HeatKernelNoise, CayleyMallowsNoise> params_;
};

// Poisson tail mass below which the heat-kernel series is truncated.
inline constexpr double kPoissonTailCutoff = 1e-12;

// Smallest J with Pr[Poi(t) > J] < kPoissonTailCutoff.
int poisson_truncation(double t);

// The transposition-walk step distribution: 1/n at the identity, 2/n^2 on
// each transposition.
DensePmf transposition_walk_pmf(int n, int cap = kDefaultEnumerationCap);

DensePmf noise_pmf_exact(const NoiseModel& model, int cap = kDefaultEnumerationCap);

// Cayley-Mallows pmf for any q > 0 (q = 1 is the uniform distribution).
DensePmf mallows_pmf(int n, double q, int cap = kDefaultEnumerationCap);

struct SamplerOptions {
  int enumeration_cap = kDefaultEnumerationCap;
  // Metropolis steps per Cayley-Mallows draw when n exceeds the cap;
  // 0 selects 20 * n * ceil(log n).
  long burn_in = 0;
};

long default_burn_in(int n);

// Reusable sampler; for Cayley-Mallows with n <= cap it precomputes the CDF
// over S_n and draws by inversion.
class NoiseSampler {
 public:
  explicit NoiseSampler(NoiseModel model, SamplerOptions options = {});
  Permutation operator()(Rng& rng) const;
  const NoiseModel& model() const { return model_; }

 private:
  NoiseModel model_;
  SamplerOptions options_;
  std::vector<double> cdf_;
};

Permutation sample_noise(const NoiseModel& model, Rng& rng, SamplerOptions options = {});

// Metropolis chain from the identity: propose tau*current for a uniform
// transposition tau, accept with min(1, q^{cycles(proposal) - cycles(current)}).
Permutation sample_mallows_metropolis(double theta, int n, long steps, Rng& rng);

// min(1, q^delta_cycles) with delta_cycles in {-1, +1}; generic so callers can
// check detailed balance in exact arithmetic.
template <typename T>
T mallows_acceptance(const T& q, int delta_cycles) {
  T out(1);
  for (int i = 0; i < delta_cycles; ++i) out *= q;
  for (int i = 0; i < -delta_cycles; ++i) out /= q;
  return out < T(1) ? out : T(1);
}

struct Multiplier {
  Partition mu;
  double value;
};

// c_trans,mu = 1/n + ((n-1)/n) * chi_mu(tau)/dim(mu).
double transposition_walk_multiplier(const Partition& mu);

// prod_{u in mu} (q + c(u)) / (q (q+1) ... (q+n-1)).
double mallows_multiplier(double q, const Partition& mu);

// The scalar c with K-hat(rho_mu) = c * Id.
Multiplier multiplier(const NoiseModel& model, const Partition& mu);

// min over mu in Up(hook(n, ell)) of |multiplier(model, mu)|.
double min_multiplier_up(const NoiseModel& model, int ell);

// min_{j in 1..ell} |e^theta - j|.
double dist_theta(double theta, int ell);

}  // namespace rankmix
