#include "rankmix/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "rankmix/errors.hpp"
#include "rankmix/junta.hpp"
#include "rankmix/simplex.hpp"

namespace rankmix {

double ExactMarginalOracle::query(std::span<const int> ibar, std::span<const int> jbar) const {
  return exact_marginal(f_, ibar, jbar);
}

EstimatedMarginalOracle::EstimatedMarginalOracle(int n, std::vector<MarginalMatrix> matrices, double delta)
    : n_(n), matrices_(std::move(matrices)), delta_(delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("estimated oracle: delta must be >= 0");
  for (std::size_t s = 0; s < matrices_.size(); ++s)
    if (matrices_[s].n() != n || matrices_[s].ell() != static_cast<int>(s) + 1)
      throw SizeMismatch("estimated oracle: matrix " + std::to_string(s + 1) + " has the wrong shape");
}

double EstimatedMarginalOracle::query(std::span<const int> ibar, std::span<const int> jbar) const {
  if (ibar.size() != jbar.size()) throw SizeMismatch("marginal query: tuple lengths differ");
  if (ibar.empty()) return 1.0;
  if (ibar.size() > matrices_.size())
    throw InvalidArgument("marginal query of length " + std::to_string(ibar.size()) + " exceeds the estimated " +
                          std::to_string(matrices_.size()));
  return query_marginal(matrices_[ibar.size() - 1], ibar, jbar).value;
}

EstimatorConfig default_learner_estimator() {
  EstimatorConfig cfg;
  cfg.repetitions = 1;
  return cfg;
}

int ceil_log2(long x) {
  if (x < 1) throw InvalidArgument("ceil_log2: argument must be >= 1");
  int r = 0;
  while ((1L << r) < x) ++r;
  return r;
}

double correlation_bound(int k, int ell) { return junta_correlation_bound(k, ell, ceil_log2(k)); }

double default_lp_slack(const LearnConfig& cfg, int n) {
  return cfg.epsilon * correlation_bound(cfg.k * cfg.k, n) / 8.0;
}

int stage_j_max(const LearnConfig& cfg) { return cfg.stage_j_max.value_or(ceil_log2(static_cast<long>(cfg.k) * cfg.k)); }

int final_j_max(const LearnConfig& cfg) { return cfg.final_j_max.value_or(ceil_log2(cfg.k)); }

namespace {

void check_config(const LearnConfig& cfg) {
  if (cfg.k < 1) throw InvalidArgument("learn: k must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) throw InvalidArgument("learn: epsilon must be in (0,1]");
  if (!(cfg.delta_conf > 0.0 && cfg.delta_conf < 1.0)) throw InvalidArgument("learn: delta_conf must be in (0,1)");
  if (cfg.lp_slack && !(*cfg.lp_slack >= 0.0)) throw InvalidArgument("learn: lp_slack must be >= 0");
  if (stage_j_max(cfg) < 0 || final_j_max(cfg) < 0) throw InvalidArgument("learn: j_max must be >= 0");
}

// Nonempty subsets of {1..len} of size <= jmax, by size then lexicographically.
std::vector<std::vector<int>> position_sets(int len, int jmax) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= std::min(len, jmax); ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
      out.push_back(idx);
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == len - size + i + 1) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int r = i + 1; r < size; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return out;
}

void check_candidates(std::span<const Tuple> candidates, int n) {
  if (candidates.empty()) throw Infeasible("one_stage_lp: no candidates");
  const std::size_t len = candidates.front().size();
  if (len == 0 || len > static_cast<std::size_t>(n)) throw InvalidArgument("one_stage_lp: bad tuple length");
  std::set<Tuple> seen;
  for (const auto& x : candidates) {
    if (x.size() != len) throw SizeMismatch("one_stage_lp: candidates of different lengths");
    check_distinct_tuple(n, x);
    if (!seen.insert(x).second) throw InvalidArgument("one_stage_lp: repeated candidate");
  }
}

constexpr double kFeasibilityTolerance = 1e-9;

}  // namespace

OneStageResult one_stage_lp(std::span<const Tuple> candidates, const MarginalOracle& oracle, double slack,
                            int j_max, std::size_t max_candidates) {
  const int n = oracle.n();
  if (candidates.size() > max_candidates)
    throw CandidateOverflow("one_stage_lp: " + std::to_string(candidates.size()) + " candidates exceed the cap " +
                            std::to_string(max_candidates));
  check_candidates(candidates, n);
  if (!(slack >= oracle.delta())) throw InvalidArgument("one_stage_lp: slack below the oracle accuracy");
  if (j_max < 0) throw InvalidArgument("one_stage_lp: j_max must be >= 0");

  const int len = static_cast<int>(candidates.front().size());
  const int jmax = std::min({j_max, len, oracle.max_query_length()});
  const std::size_t m = candidates.size();

  OneStageResult out;
  out.candidates.assign(candidates.begin(), candidates.end());

  // Constraints sharing a membership pattern collapse to the tightest pair.
  std::map<std::vector<char>, std::pair<double, double>> bands;
  std::map<int, std::vector<std::vector<int>>> all_values;
  for (const auto& J : position_sets(len, jmax)) {
    std::map<std::vector<int>, std::vector<std::size_t>> realized;
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<int> y;
      y.reserve(J.size());
      for (int p : J) y.push_back(out.candidates[c][static_cast<std::size_t>(p - 1)]);
      realized[y].push_back(c);
    }
    for (auto& [y, members] : realized) {
      const double beta = oracle.query(J, y);
      std::vector<char> pattern(m, 0);
      for (std::size_t c : members) pattern[c] = 1;
      auto [it, fresh] = bands.try_emplace(pattern, beta, beta);
      if (!fresh) {
        it->second.first = std::min(it->second.first, beta);
        it->second.second = std::max(it->second.second, beta);
      }
      out.constraints.push_back(LpConstraint{J, y, beta, members});
    }
    const int s = static_cast<int>(J.size());
    auto& values = all_values[s];
    if (values.empty()) {
      const TabloidIndexer idx(n, s, static_cast<std::size_t>(-1));
      for (std::size_t i = 0; i < idx.size(); ++i) values.push_back(idx.tuple(i));
    }
    for (const auto& y : values)
      if (!realized.contains(y)) out.max_unrealized = std::max(out.max_unrealized, oracle.query(J, y));
  }

  // min t s.t. G [s; t] >= h, solved through its dual max h^T y, G^T y <= e_t.
  const std::size_t rows = 2 + 2 * bands.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m + 1));
  Eigen::VectorXd h(static_cast<Eigen::Index>(rows));
  G.row(0).head(static_cast<Eigen::Index>(m)).setOnes();
  h(0) = 1.0;
  G.row(1).head(static_cast<Eigen::Index>(m)).setConstant(-1.0);
  h(1) = -1.0;
  Eigen::Index r = 2;
  for (const auto& [pattern, band] : bands) {
    for (std::size_t c = 0; c < m; ++c) {
      G(r, static_cast<Eigen::Index>(c)) = pattern[c];
      G(r + 1, static_cast<Eigen::Index>(c)) = -pattern[c];
    }
    G(r, static_cast<Eigen::Index>(m)) = 1.0;
    G(r + 1, static_cast<Eigen::Index>(m)) = 1.0;
    h(r) = band.second;
    h(r + 1) = -band.first;
    r += 2;
  }
  Eigen::VectorXd e_t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m + 1));
  e_t(static_cast<Eigen::Index>(m)) = 1.0;
  const SimplexResult lp = maximize(G.transpose(), e_t, h);
  if (lp.status != SimplexStatus::Optimal) throw Infeasible("one_stage_lp: simplex did not reach an optimum");

  out.weights.resize(m);
  for (std::size_t c = 0; c < m; ++c) out.weights[c] = std::max(0.0, lp.duals[c]);

  double total = 0.0;
  for (double w : out.weights) total += w;
  out.max_violation = std::abs(total - 1.0);
  for (const auto& con : out.constraints) {
    double sum = 0.0;
    for (std::size_t c : con.members) sum += out.weights[c];
    out.max_violation = std::max(out.max_violation, std::abs(con.beta - sum));
  }
  if (out.max_violation > slack + kFeasibilityTolerance)
    throw Infeasible("one_stage_lp: smallest achievable violation " + std::to_string(out.max_violation) +
                     " exceeds slack " + std::to_string(slack));
  if (out.max_unrealized > slack + kFeasibilityTolerance)
    throw Infeasible("one_stage_lp: a marginal no candidate realizes has mass " + std::to_string(out.max_unrealized) +
                     " above slack " + std::to_string(slack));
  return out;
}

namespace {

double effective_slack(const LearnConfig& cfg, const MarginalOracle& oracle) {
  return std::max(cfg.lp_slack.value_or(default_lp_slack(cfg, oracle.n())), oracle.delta());
}

}  // namespace

StageState support_stage(const StageState& state, const MarginalOracle& oracle, const LearnConfig& cfg,
                         StageReport* report) {
  check_config(cfg);
  const int n = oracle.n();
  const int L = state.ell + 1;
  if (L > n) throw InvalidArgument("support_stage: prefixes are already complete");
  for (const auto& x : state.support)
    if (static_cast<int>(x.size()) != state.ell) throw SizeMismatch("support_stage: prefix of the wrong length");

  StageReport rep;
  rep.ell = L;
  const std::vector<int> position{L};
  for (int t = 1; t <= n; ++t) {
    const std::vector<int> value{t};
    if (oracle.query(position, value) >= cfg.epsilon / 2.0) rep.marginal_hits.push_back(t);
  }

  std::vector<Tuple> candidates;
  for (const auto& x : state.support) {
    for (int t : rep.marginal_hits) {
      if (std::find(x.begin(), x.end(), t) != x.end()) continue;
      Tuple y = x;
      y.push_back(t);
      candidates.push_back(std::move(y));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  const auto cap = static_cast<std::size_t>(cfg.k) * static_cast<std::size_t>(cfg.k);
  if (candidates.size() > cap)
    throw CandidateOverflow("support_stage " + std::to_string(L) + ": " + std::to_string(candidates.size()) +
                            " candidates exceed k^2 = " + std::to_string(cap));
  if (candidates.empty()) throw Infeasible("support_stage " + std::to_string(L) + ": no candidate prefixes");

  rep.j_max = std::min({stage_j_max(cfg), L, oracle.max_query_length()});
  const OneStageResult lp = one_stage_lp(candidates, oracle, effective_slack(cfg, oracle), rep.j_max, cap);
  rep.candidates = candidates.size();
  rep.constraints = lp.constraints.size();
  rep.max_violation = lp.max_violation;

  StageState next;
  next.ell = L;
  next.support.clear();
  next.weights.clear();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (lp.weights[c] > cfg.epsilon / 4.0) {
      next.support.push_back(candidates[c]);
      next.weights.push_back(lp.weights[c]);
    }
  }
  rep.kept = next.support.size();
  if (report != nullptr) *report = rep;
  if (next.support.size() > static_cast<std::size_t>(cfg.k))
    throw SupportOverflow("support_stage " + std::to_string(L) + ": " + std::to_string(next.support.size()) +
                          " prefixes survive pruning, more than k");
  if (next.support.empty()) throw Infeasible("support_stage " + std::to_string(L) + ": every candidate was pruned");
  return next;
}

SparseRankingMixture learn(const MarginalOracle& oracle, const LearnConfig& cfg, LearnReport* report) {
  check_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const int n = oracle.n();
  LearnReport rep;
  rep.slack = effective_slack(cfg, oracle);
  rep.oracle_delta = oracle.delta();

  StageState state;
  for (int L = 1; L <= n; ++L) {
    StageReport stage;
    state = support_stage(state, oracle, cfg, &stage);
    rep.stages.push_back(stage);
  }

  const int jf = std::min({final_j_max(cfg), n, oracle.max_query_length()});
  const OneStageResult lp = one_stage_lp(state.support, oracle, rep.slack, jf);
  rep.final_stage.ell = n;
  rep.final_stage.j_max = jf;
  rep.final_stage.candidates = state.support.size();
  rep.final_stage.constraints = lp.constraints.size();
  rep.final_stage.max_violation = lp.max_violation;

  std::vector<Atom> atoms;
  double total = 0.0;
  for (std::size_t c = 0; c < state.support.size(); ++c) {
    if (lp.weights[c] > cfg.epsilon / 4.0) {
      atoms.push_back(Atom{Permutation::from_one_line(state.support[c]), lp.weights[c]});
      total += lp.weights[c];
    }
  }
  if (atoms.empty()) throw Infeasible("learn: every atom fell below the pruning threshold");
  for (auto& a : atoms) a.weight /= total;
  rep.final_stage.kept = atoms.size();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report != nullptr) {
    // Sampled-mode fields set by the caller are left alone.
    report->stages = std::move(rep.stages);
    report->final_stage = rep.final_stage;
    report->slack = rep.slack;
    report->oracle_delta = rep.oracle_delta;
    report->seconds = rep.seconds;
  }
  return SparseRankingMixture(n, std::move(atoms));
}

SparseRankingMixture learn_from_samples(std::span<const Permutation> samples, const NoiseModel& noise,
                                        const LearnConfig& cfg, Rng* rng, LearnReport* report) {
  check_config(cfg);
  const int n = noise.n();
  if (n < 2) throw InvalidArgument("learn_from_samples: need n >= 2");
  if (samples.empty()) throw InvalidArgument("learn_from_samples: no samples");
  for (const auto& s : samples)
    if (s.size() != n) throw SizeMismatch("learn_from_samples: sample outside S_" + std::to_string(n));

  const int ell_max = std::min(n - 1, std::max({stage_j_max(cfg), final_j_max(cfg), 1}));
  const double floor = cfg.estimator.sigma_min_floor;
  const double weakest = min_multiplier_up(noise, ell_max);
  if (weakest < floor)
    throw NoiseUnidentifiable("learn_from_samples: smallest multiplier " + std::to_string(weakest) +
                              " is below the floor " + std::to_string(floor));

  LearnReport rep;
  rep.ell_max = ell_max;
  rep.samples = static_cast<long>(samples.size());
  std::vector<MarginalMatrix> matrices;
  double delta = 0.0;
  const double tau = cfg.delta_conf / ell_max;
  for (int s = 1; s <= ell_max; ++s) {
    const NoiseFourier m1 = noise_fourier(noise, s, cfg.estimator, rng);
    MarginalEstimate est = estimate_marginal_matrix(samples, m1, cfg.estimator);
    const long batch = est.samples_used / est.repetitions;
    delta = std::max(delta, est.inverse_row_norm * hoeffding_radius(batch, est.matrix.dimension(), tau));
    rep.budget = std::max(rep.budget, est.budget);
    rep.sigma_min = s == 1 ? est.sigma_min : std::min(rep.sigma_min, est.sigma_min);
    rep.inverse_row_norm = std::max(rep.inverse_row_norm, est.inverse_row_norm);
    matrices.push_back(std::move(est.matrix));
  }
  const EstimatedMarginalOracle oracle(n, std::move(matrices), delta);
  if (report != nullptr) *report = rep;
  return learn(oracle, cfg, report);
}

}  // namespace rankmix
