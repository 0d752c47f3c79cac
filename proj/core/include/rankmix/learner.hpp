#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankmix/distribution.hpp"
#include "rankmix/estimator.hpp"
#include "rankmix/noise.hpp"
#include "rankmix/tabloid.hpp"

namespace rankmix {

using Tuple = std::vector<int>;

// Answers (ibar, jbar)-marginal queries of an unknown f over S_n, each
// within delta() of the truth.
class MarginalOracle {
 public:
  virtual ~MarginalOracle() = default;
  virtual int n() const = 0;
  virtual double delta() const = 0;
  // Longest tuple length the oracle can answer.
  virtual int max_query_length() const = 0;
  virtual double query(std::span<const int> ibar, std::span<const int> jbar) const = 0;
};

class ExactMarginalOracle final : public MarginalOracle {
 public:
  explicit ExactMarginalOracle(SparseRankingMixture f) : f_(std::move(f)) {}
  int n() const override { return f_.n(); }
  double delta() const override { return 0.0; }
  int max_query_length() const override { return f_.n() - 1; }
  double query(std::span<const int> ibar, std::span<const int> jbar) const override;

 private:
  SparseRankingMixture f_;
};

// Backed by one estimated marginal matrix per tuple length s = 1..ell_max;
// answers are clamped to [0, 1].
class EstimatedMarginalOracle final : public MarginalOracle {
 public:
  EstimatedMarginalOracle(int n, std::vector<MarginalMatrix> matrices, double delta);
  int n() const override { return n_; }
  double delta() const override { return delta_; }
  int max_query_length() const override { return static_cast<int>(matrices_.size()); }
  double query(std::span<const int> ibar, std::span<const int> jbar) const override;
  const MarginalMatrix& matrix(int s) const { return matrices_.at(static_cast<std::size_t>(s - 1)); }

 private:
  int n_;
  std::vector<MarginalMatrix> matrices_;
  double delta_;
};

EstimatorConfig default_learner_estimator();

struct LearnConfig {
  int k = 1;
  double epsilon = 0.1;
  double delta_conf = 0.05;
  std::optional<double> lp_slack;    // default epsilon * B(k^2) / 8
  std::optional<int> stage_j_max;    // default ceil(log2(k^2))
  std::optional<int> final_j_max;    // default ceil(log2 k)
  EstimatorConfig estimator = default_learner_estimator();
};

int ceil_log2(long x);

// B(k) = (4/5) k^{-1} (10 min(k, ell))^{-ceil(log2 k)}.
double correlation_bound(int k, int ell);

double default_lp_slack(const LearnConfig& cfg, int n);
int stage_j_max(const LearnConfig& cfg);
int final_j_max(const LearnConfig& cfg);

// |beta - sum_{x in members} s_x| <= slack, for positions J and values y.
struct LpConstraint {
  std::vector<int> positions;
  std::vector<int> values;
  double beta = 0.0;
  std::vector<std::size_t> members;  // candidate indices with x_J = y
};

struct OneStageResult {
  std::vector<Tuple> candidates;
  std::vector<double> weights;
  std::vector<LpConstraint> constraints;
  double max_violation = 0.0;   // max over constraints of |beta - sum|
  double max_unrealized = 0.0;  // largest beta over values y no candidate realizes
};

// Minimizes the largest constraint violation over the probability simplex
// on the candidates (J ranges over nonempty subsets of positions of size at
// most j_max) and throws Infeasible when that minimum, or an unrealized
// marginal, exceeds slack. Ties are resolved by the simplex pivot rule.
OneStageResult one_stage_lp(std::span<const Tuple> candidates, const MarginalOracle& oracle, double slack,
                            int j_max, std::size_t max_candidates = static_cast<std::size_t>(-1));

struct StageState {
  int ell = 0;
  std::vector<Tuple> support{Tuple{}};
  std::vector<double> weights{1.0};
};

struct StageReport {
  int ell = 0;
  int j_max = 0;
  std::vector<int> marginal_hits;  // S_marg
  std::size_t candidates = 0;
  std::size_t constraints = 0;
  std::size_t kept = 0;
  double max_violation = 0.0;
};

StageState support_stage(const StageState& state, const MarginalOracle& oracle, const LearnConfig& cfg,
                         StageReport* report = nullptr);

struct LearnReport {
  std::vector<StageReport> stages;
  StageReport final_stage;
  double slack = 0.0;
  double oracle_delta = 0.0;
  int ell_max = 0;
  long samples = 0;
  long budget = 0;
  double sigma_min = 0.0;
  double inverse_row_norm = 0.0;
  double seconds = 0.0;
};

SparseRankingMixture learn(const MarginalOracle& oracle, const LearnConfig& cfg, LearnReport* report = nullptr);

// Estimates marginal matrices for every tuple length up to
// min(n-1, max(stage j_max, final j_max)) from noisy samples and learns from
// them. The declared oracle accuracy is ||M1^{-1}||_inf times the entrywise
// Hoeffding radius of one batch; it assumes an exact noise matrix.
SparseRankingMixture learn_from_samples(std::span<const Permutation> samples, const NoiseModel& noise,
                                        const LearnConfig& cfg, Rng* rng = nullptr, LearnReport* report = nullptr);

}  // namespace rankmix
