#include "rankmix/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/SVD>

#include "rankmix/errors.hpp"

namespace rankmix {

int default_repetitions(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must be in (0,1)");
  return static_cast<int>(std::ceil(8.0 * std::log(1.0 / tau)));
}

int effective_repetitions(const EstimatorConfig& cfg, std::size_t samples) {
  const int wanted = cfg.repetitions > 0 ? cfg.repetitions : default_repetitions(cfg.tau);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(wanted), std::max<std::size_t>(samples, 1)));
}

double hoeffding_radius(long samples, std::size_t dimension, double tau) {
  if (samples < 1) throw InvalidArgument("hoeffding_radius: need samples");
  const double d = static_cast<double>(dimension);
  return std::sqrt(std::log(2.0 * d * d / tau) / (2.0 * static_cast<double>(samples)));
}

long sample_budget(double delta, double tau, std::size_t dimension, double sigma_min) {
  if (!(delta > 0.0) || !(tau > 0.0 && tau < 1.0) || !(sigma_min > 0.0))
    throw InvalidArgument("sample_budget: need delta > 0, tau in (0,1), sigma_min > 0");
  const double d = static_cast<double>(dimension);
  const double ratio = d / (delta * sigma_min);
  const double n = std::ceil(2.0 * ratio * ratio * std::log(2.0 * d * d / tau));
  return n > 9e18 ? std::numeric_limits<long>::max() : static_cast<long>(n);
}

namespace {

std::string format_real(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void check_config(const EstimatorConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InvalidArgument("estimator: delta must be in (0,1)");
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) throw InvalidArgument("estimator: tau must be in (0,1)");
  if (!(cfg.sigma_min_floor > 0.0)) throw InvalidArgument("estimator: sigma_min_floor must be positive");
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

NoiseFourier noise_fourier(const NoiseModel& model, int ell, const EstimatorConfig& cfg, Rng* rng) {
  check_config(cfg);
  NoiseFourier out;
  out.n = model.n();
  out.ell = ell;
  if (cfg.noise_matrix_mode == NoiseMatrixMode::Exact && model.n() <= cfg.enumeration_cap) {
    out.matrix = exact_fourier(noise_pmf_exact(model, cfg.enumeration_cap), ell, cfg.tabloid_cap).entries();
  } else {
    if (rng == nullptr) throw InvalidArgument("noise_fourier: empirical noise matrix needs a generator");
    long draws = cfg.noise_samples;
    if (draws <= 0) {
      const double sigma = std::max(min_multiplier_up(model, ell), cfg.sigma_min_floor);
      draws = std::min(cfg.max_noise_samples,
                       sample_budget(cfg.delta * sigma / 4.0, cfg.tau, tabloid_dimension(model.n(), ell), sigma));
    }
    SamplerOptions options;
    options.enumeration_cap = cfg.enumeration_cap;
    const NoiseSampler sampler(model, options);
    std::vector<Permutation> noise;
    noise.reserve(static_cast<std::size_t>(draws));
    for (long i = 0; i < draws; ++i) noise.push_back(sampler(*rng));
    out.matrix = empirical_fourier(noise, ell, cfg.tabloid_cap).entries();
    out.samples_used = draws;
  }
  out.sigma_min = smallest_singular_value(out.matrix);
  return out;
}

MarginalMatrix invert_noise(const NoiseFourier& m1, const MarginalMatrix& m2, double sigma_min_floor) {
  if (m1.n != m2.n() || m1.ell != m2.ell()) throw SizeMismatch("invert_noise: M1 and M2 shapes differ");
  if (m1.sigma_min < sigma_min_floor)
    throw SingularNoise("noise Fourier matrix is (numerically) singular: sigma_min = " +
                        format_real(m1.sigma_min) + " < floor " + format_real(sigma_min_floor));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m1.matrix);
  return MarginalMatrix(m2.n(), m2.ell(), lu.solve(m2.entries()));
}

double inverse_row_norm(const NoiseFourier& m1) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m1.matrix);
  return lu.inverse().cwiseAbs().rowwise().sum().maxCoeff();
}

MarginalEstimate estimate_marginal_matrix(std::span<const Permutation> noisy_samples, const NoiseFourier& m1,
                                          const EstimatorConfig& cfg) {
  check_config(cfg);
  if (noisy_samples.empty()) throw InvalidArgument("estimate_marginal_matrix: no samples");
  const std::size_t dim = tabloid_dimension(m1.n, m1.ell);
  if (m1.sigma_min < cfg.sigma_min_floor)
    throw SingularNoise("noise Fourier matrix is (numerically) singular: sigma_min = " +
                        format_real(m1.sigma_min) + " < floor " + format_real(cfg.sigma_min_floor));
  const long budget = sample_budget(cfg.delta, cfg.tau, dim, m1.sigma_min);
  const auto n_samples = static_cast<long>(noisy_samples.size());
  if (cfg.strict && n_samples < budget)
    throw InsufficientSamples("estimate_marginal_matrix: " + std::to_string(n_samples) +
                              " samples below budget " + std::to_string(budget));

  const int reps = effective_repetitions(cfg, noisy_samples.size());
  std::vector<Eigen::MatrixXd> batches;
  batches.reserve(static_cast<std::size_t>(reps));
  const std::size_t per_batch = noisy_samples.size() / static_cast<std::size_t>(reps);
  for (int b = 0; b < reps; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * per_batch;
    const std::size_t end = (b + 1 == reps) ? noisy_samples.size() : begin + per_batch;
    const MarginalMatrix m2 = empirical_fourier(noisy_samples.subspan(begin, end - begin), m1.ell, cfg.tabloid_cap);
    batches.push_back(invert_noise(m1, m2, cfg.sigma_min_floor).entries());
  }

  Eigen::MatrixXd merged;
  if (reps == 1) {
    merged = std::move(batches.front());
  } else {
    const auto d = batches.front().rows();
    merged.resize(d, d);
    std::vector<double> column(static_cast<std::size_t>(reps));
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        for (int b = 0; b < reps; ++b) column[static_cast<std::size_t>(b)] = batches[static_cast<std::size_t>(b)](i, j);
        // Lower median for even counts keeps the merge deterministic.
        const auto mid = column.begin() + (reps - 1) / 2;
        std::nth_element(column.begin(), mid, column.end());
        merged(i, j) = *mid;
      }
    }
  }
  return MarginalEstimate{MarginalMatrix(m1.n, m1.ell, std::move(merged)),
                          m1.sigma_min,
                          inverse_row_norm(m1),
                          n_samples,
                          m1.samples_used,
                          budget,
                          reps};
}

MarginalEstimate estimate_marginal_matrix(std::span<const Permutation> noisy_samples, const NoiseModel& model,
                                          int ell, const EstimatorConfig& cfg, Rng* rng) {
  if (!noisy_samples.empty() && noisy_samples.front().size() != model.n())
    throw SizeMismatch("estimate_marginal_matrix: samples are not in S_" + std::to_string(model.n()));
  return estimate_marginal_matrix(noisy_samples, noise_fourier(model, ell, cfg, rng), cfg);
}

MarginalQuery query_marginal(const MarginalMatrix& m, std::span<const int> ibar, std::span<const int> jbar) {
  const double raw = m.at(ibar, jbar);
  const double value = std::clamp(raw, 0.0, 1.0);
  return MarginalQuery{value, raw, value != raw};
}

}  // namespace rankmix
