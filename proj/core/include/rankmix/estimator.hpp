#pragma once

#include <span>

#include <Eigen/Dense>

#include "rankmix/noise.hpp"
#include "rankmix/tabloid.hpp"

namespace rankmix {

enum class NoiseMatrixMode { Exact, Empirical };

struct EstimatorConfig {
  double delta = 0.05;  // target per-entry accuracy of the recovered marginals
  double tau = 0.05;    // failure probability
  NoiseMatrixMode noise_matrix_mode = NoiseMatrixMode::Exact;
  double sigma_min_floor = 1e-6;
  // Disjoint sample batches whose estimates are merged by entrywise median;
  // 0 selects ceil(8 ln(1/tau)), 1 disables the median step.
  int repetitions = 0;
  // Reject sample sets smaller than sample_budget() when set.
  bool strict = false;
  // Empirical mode: noise draws used for M1; 0 uses the budget formula with
  // delta replaced by delta * sigma_min / 4, capped at max_noise_samples.
  long noise_samples = 0;
  long max_noise_samples = 2'000'000;
  int enumeration_cap = kDefaultEnumerationCap;
  std::size_t tabloid_cap = kDefaultTabloidCap;
};

int default_repetitions(double tau);
int effective_repetitions(const EstimatorConfig& cfg, std::size_t samples);

// Entrywise Hoeffding radius sqrt(ln(2 D^2 / tau) / (2N)): every entry of an
// empirical D x D Fourier matrix is within it of the truth w.p. >= 1 - tau.
double hoeffding_radius(long samples, std::size_t dimension, double tau);

// ceil(2 (D / (delta sigma_min))^2 ln(2 D^2 / tau)).
long sample_budget(double delta, double tau, std::size_t dimension, double sigma_min);

struct NoiseFourier {
  int n = 0;
  int ell = 0;
  Eigen::MatrixXd matrix;
  double sigma_min = 0.0;
  long samples_used = 0;  // 0 when computed exactly
};

// M1 = K-hat at the (n-ell, 1^ell) permutation representation, exact when
// the mode is Exact and n is within the enumeration cap, else from draws of
// the noise sampler (rng required).
NoiseFourier noise_fourier(const NoiseModel& model, int ell, const EstimatorConfig& cfg, Rng* rng = nullptr);

// M1^{-1} M2 by LU solve. Throws SingularNoise when sigma_min(M1) < floor.
MarginalMatrix invert_noise(const NoiseFourier& m1, const MarginalMatrix& m2, double sigma_min_floor);

// Max absolute row sum of M1^{-1}; bounds how far entry errors of M2 can be
// amplified by the inversion.
double inverse_row_norm(const NoiseFourier& m1);

struct MarginalEstimate {
  MarginalMatrix matrix;  // raw (unclamped) entries
  double sigma_min;
  double inverse_row_norm;
  long samples_used;
  long noise_samples_used;
  long budget;
  int repetitions;
};

MarginalEstimate estimate_marginal_matrix(std::span<const Permutation> noisy_samples, const NoiseModel& model,
                                          int ell, const EstimatorConfig& cfg, Rng* rng = nullptr);

// Same pipeline with a precomputed noise matrix (reused across calls).
MarginalEstimate estimate_marginal_matrix(std::span<const Permutation> noisy_samples, const NoiseFourier& m1,
                                          const EstimatorConfig& cfg);

struct MarginalQuery {
  double value;  // clamped to [0, 1]
  double raw;
  bool clamped;
};

MarginalQuery query_marginal(const MarginalMatrix& m, std::span<const int> ibar, std::span<const int> jbar);

}  // namespace rankmix
