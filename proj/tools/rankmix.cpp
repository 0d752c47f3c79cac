#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rankmix/characters.hpp>
#include <rankmix/errors.hpp>
#include <rankmix/estimator.hpp>
#include <rankmix/io.hpp>
#include <rankmix/learner.hpp>
#include <rankmix/lower_bound.hpp>
#include <rankmix/noise.hpp>
#include <rankmix/tabloid.hpp>

#include "verify.hpp"

#ifndef RANKMIX_VERSION
#define RANKMIX_VERSION "unknown"
#endif

using namespace rankmix;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::string out;
  int jobs = 1;

  std::string noise;
  std::string mixture;
  std::string oracle;
  std::string samples;
  std::string mixture_out;
  long n_samples = 0;
  int ell = 1;
  int k = 1;
  double epsilon = 0.1;
  int n = 0;

  int t = 2;
  int j = 1;
  std::vector<double> thetas;
  std::string suite = "all";
};

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(o.out, text);
  }
}

void log_run(const std::string& command, const Options& o, const std::vector<std::pair<std::string, std::string>>& cfg) {
  std::cerr << "rankmix " << RANKMIX_VERSION << " command=" << command << " seed=" << o.seed << " jobs=" << o.jobs;
  for (const auto& [k, v] : cfg) std::cerr << " " << k << "=" << (v.empty() ? "-" : v);
  std::cerr << "\n";
}

NoiseModel load_noise(const std::string& path) { return noise_from_json(read_text_file(path)); }
SparseRankingMixture load_mixture(const std::string& path) { return mixture_from_json(read_text_file(path)); }

std::vector<Permutation> load_samples(const std::string& path, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open samples file '" + path + "'");
  return read_samples(in, n);
}

void check_same_n(int a, int b, const std::string& what) {
  if (a != b) throw SizeMismatch(what + ": n=" + std::to_string(a) + " vs n=" + std::to_string(b));
}

int cmd_sample(const Options& o) {
  log_run("sample", o, {{"noise", o.noise}, {"mixture", o.mixture}, {"n-samples", std::to_string(o.n_samples)},
                        {"n", std::to_string(o.n)}, {"k", std::to_string(o.k)}, {"epsilon", format_double(o.epsilon)}});
  if (o.n_samples < 0) throw InvalidArgument("--n-samples must be >= 0");
  Rng rng(o.seed);
  std::optional<SparseRankingMixture> f;
  if (!o.mixture.empty()) {
    f = load_mixture(o.mixture);
  } else {
    if (o.n < 1) throw InvalidArgument("sample: give --mixture, or --n with --k and --epsilon for a random mixture");
    f = random_heavy_mixture(o.n, o.k, o.epsilon, rng);
    if (!o.mixture_out.empty()) write_text_file(o.mixture_out, mixture_to_json(*f));
  }
  std::optional<NoiseSampler> sampler;
  if (!o.noise.empty()) {
    const auto model = load_noise(o.noise);
    check_same_n(model.n(), f->n(), "noise and mixture");
    sampler.emplace(model);
  }
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(o.n_samples));
  for (long i = 0; i < o.n_samples; ++i) {
    const auto sigma = sample(*f, rng);
    out.push_back(sampler ? compose((*sampler)(rng), sigma) : sigma);
  }
  std::ostringstream s;
  write_samples(s, out);
  emit(o, s.str());
  return 0;
}

int cmd_estimate(const Options& o) {
  log_run("estimate", o, {{"noise", o.noise}, {"samples", o.samples}, {"ell", std::to_string(o.ell)}});
  const auto model = load_noise(o.noise);
  const auto samples = load_samples(o.samples, model.n());
  Rng rng(o.seed);
  const auto est = estimate_marginal_matrix(samples, model, o.ell, EstimatorConfig{}, &rng);
  std::cerr << "samples=" << est.samples_used << " budget=" << est.budget << " sigma_min=" << est.sigma_min
            << " repetitions=" << est.repetitions << "\n";
  std::ostringstream s;
  write_marginal_csv(s, est.matrix);
  emit(o, s.str());
  return 0;
}

int cmd_learn(const Options& o) {
  log_run("learn", o, {{"noise", o.noise}, {"samples", o.samples}, {"oracle", o.oracle}, {"mixture", o.mixture},
                       {"k", std::to_string(o.k)}, {"epsilon", format_double(o.epsilon)}});
  LearnConfig cfg;
  cfg.k = o.k;
  cfg.epsilon = o.epsilon;
  LearnReport report;
  const auto start = std::chrono::steady_clock::now();
  std::optional<SparseRankingMixture> g;
  if (!o.oracle.empty()) {
    if (!o.samples.empty()) throw InvalidArgument("learn: --oracle and --samples are exclusive");
    g = learn(ExactMarginalOracle(load_mixture(o.oracle)), cfg, &report);
  } else {
    if (o.noise.empty() || o.samples.empty()) throw InvalidArgument("learn: give --noise and --samples, or --oracle");
    const auto model = load_noise(o.noise);
    const auto samples = load_samples(o.samples, model.n());
    Rng rng(o.seed);
    g = learn_from_samples(samples, model, cfg, &rng, &report);
  }
  std::cerr << "runtime_s=" << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << " slack=" << report.slack << " oracle_delta=" << report.oracle_delta;
  if (report.samples > 0)
    std::cerr << " samples=" << report.samples << " budget=" << report.budget << " ell_max=" << report.ell_max
              << " sigma_min=" << report.sigma_min;
  std::cerr << "\n";
  for (const auto& st : report.stages)
    std::cerr << "stage " << st.ell << ": hits=" << st.marginal_hits.size() << " candidates=" << st.candidates
              << " constraints=" << st.constraints << " kept=" << st.kept << " violation=" << st.max_violation << "\n";
  std::optional<SparseRankingMixture> truth;
  if (!o.mixture.empty()) truth = load_mixture(o.mixture);
  else if (!o.oracle.empty()) truth = load_mixture(o.oracle);
  if (truth) std::cerr << "tv_vs_truth=" << tv_distance(*truth, *g) << "\n";
  emit(o, mixture_to_json(*g));
  return 0;
}

int cmd_spectrum(const Options& o) {
  log_run("spectrum", o, {{"noise", o.noise}, {"ell", std::to_string(o.ell)}});
  const auto model = load_noise(o.noise);
  const auto parts = o.ell > 0 ? up_set(hook_partition(model.n(), o.ell)) : all_partitions(model.n());
  std::ostringstream s;
  s << csv_row(std::vector<std::string>{"partition", "multiplier"});
  for (const auto& mu : parts)
    s << csv_row(std::vector<std::string>{mu.to_string(), format_double(multiplier(model, mu).value)});
  emit(o, s.str());
  return 0;
}

int cmd_fourier(const Options& o) {
  log_run("fourier", o, {{"mixture", o.mixture}, {"samples", o.samples}, {"ell", std::to_string(o.ell)}});
  std::ostringstream s;
  if (!o.mixture.empty()) {
    if (!o.samples.empty()) throw InvalidArgument("fourier: --mixture and --samples are exclusive");
    write_marginal_csv(s, exact_fourier(load_mixture(o.mixture), o.ell));
  } else {
    if (o.samples.empty()) throw InvalidArgument("fourier: give --mixture or --samples");
    const auto samples = load_samples(o.samples, 0);
    if (samples.empty()) throw InvalidArgument("fourier: the samples file is empty");
    write_marginal_csv(s, empirical_fourier(samples, o.ell));
  }
  emit(o, s.str());
  return 0;
}

int cmd_lowerbound(const Options& o) {
  std::string thetas;
  for (double th : o.thetas) thetas += (thetas.empty() ? "" : ";") + format_double(th);
  log_run("lowerbound", o, {{"t", std::to_string(o.t)}, {"j", std::to_string(o.j)}, {"theta", thetas}});
  if (o.thetas.empty()) throw InvalidArgument("lowerbound: give at least one --theta");
  const auto pair = build_hard_pair(o.t, o.j);
  std::vector<Separation> rows(o.thetas.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, o.jobs));
  for (std::size_t start = 0; start < rows.size(); start += jobs) {
    std::vector<std::future<Separation>> batch;
    for (std::size_t i = start; i < std::min(rows.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&pair, th = o.thetas[i]] { return verify_separation(pair, th); }));
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }
  std::ostringstream s;
  s << csv_row(std::vector<std::string>{"theta", "eta", "multiplier", "tv", "bound", "pass"});
  for (const auto& r : rows)
    s << csv_row(std::vector<std::string>{format_double(r.theta), format_double(r.eta), format_double(r.multiplier),
                                          format_double(r.tv), format_double(r.bound),
                                          r.bound_applies ? (r.pass ? "pass" : "fail") : "n/a"});
  emit(o, s.str());
  return 0;
}

int cmd_verify(const Options& o) {
  log_run("verify", o, {{"suite", o.suite}, {"n", std::to_string(o.n)}});
  const auto checks = tools::run_suite(o.suite, o.n);
  std::ostringstream s;
  s << csv_row(std::vector<std::string>{"suite", "identity", "max_deviation", "tolerance", "pass"});
  bool ok = true;
  for (const auto& c : checks) {
    s << csv_row(std::vector<std::string>{c.suite, c.identity, format_double(c.max_deviation),
                                          format_double(c.tolerance), c.pass() ? "pass" : "fail"});
    ok = ok && c.pass();
  }
  emit(o, s.str());
  if (!ok) std::cerr << "verify: at least one identity failed\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn sparse mixtures of rankings from noisy samples"};
  app.set_version_flag("--version", RANKMIX_VERSION);
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--jobs", o.jobs, "Parallel independent trials")->check(CLI::PositiveNumber)->capture_default_str();
  };

  auto* sample_cmd = app.add_subcommand("sample", "Draw noisy samples from a mixture");
  common(sample_cmd);
  sample_cmd->add_option("--mixture", o.mixture, "Mixture JSON")->check(CLI::ExistingFile);
  sample_cmd->add_option("--noise", o.noise, "Noise JSON (omit for noiseless draws)")->check(CLI::ExistingFile);
  sample_cmd->add_option("--n-samples", o.n_samples, "Number of samples")->required();
  sample_cmd->add_option("--n", o.n, "Random mixture: number of items");
  sample_cmd->add_option("--k", o.k, "Random mixture: number of atoms")->capture_default_str();
  sample_cmd->add_option("--epsilon", o.epsilon, "Random mixture: minimum weight")->capture_default_str();
  sample_cmd->add_option("--mixture-out", o.mixture_out, "Write the random mixture here");

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the ell-way marginal matrix from noisy samples");
  common(estimate_cmd);
  estimate_cmd->add_option("--noise", o.noise, "Noise JSON")->required()->check(CLI::ExistingFile);
  estimate_cmd->add_option("--samples", o.samples, "Samples file, one permutation per line")
      ->required()
      ->check(CLI::ExistingFile);
  estimate_cmd->add_option("--ell", o.ell, "Tuple length")->capture_default_str();

  auto* learn_cmd = app.add_subcommand("learn", "Recover the mixture from noisy samples or exact marginals");
  common(learn_cmd);
  learn_cmd->add_option("--noise", o.noise, "Noise JSON")->check(CLI::ExistingFile);
  learn_cmd->add_option("--samples", o.samples, "Samples file")->check(CLI::ExistingFile);
  learn_cmd->add_option("--oracle", o.oracle, "Mixture JSON queried for exact marginals")->check(CLI::ExistingFile);
  learn_cmd->add_option("--mixture", o.mixture, "Ground-truth mixture JSON for the TV report")->check(CLI::ExistingFile);
  learn_cmd->add_option("--k", o.k, "Maximum number of atoms")->capture_default_str();
  learn_cmd->add_option("--epsilon", o.epsilon, "Minimum atom weight")->capture_default_str();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Print noise multipliers per partition");
  common(spectrum_cmd);
  spectrum_cmd->add_option("--noise", o.noise, "Noise JSON")->required()->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--ell", o.ell, "Restrict to the up-set of the hook shape (0 for all partitions)")
      ->capture_default_str();

  auto* fourier_cmd = app.add_subcommand("fourier", "Dump the marginal matrix of a mixture or a sample");
  common(fourier_cmd);
  fourier_cmd->add_option("--mixture", o.mixture, "Mixture JSON")->check(CLI::ExistingFile);
  fourier_cmd->add_option("--samples", o.samples, "Samples file")->check(CLI::ExistingFile);
  fourier_cmd->add_option("--ell", o.ell, "Tuple length")->capture_default_str();

  auto* lower_cmd = app.add_subcommand("lowerbound", "Exact separation of the square-shape hard pair");
  common(lower_cmd);
  lower_cmd->add_option("--t", o.t, "Rectangle width")->capture_default_str();
  lower_cmd->add_option("--j", o.j, "Extra rows")->capture_default_str();
  lower_cmd->add_option("--theta", o.thetas, "Mallows theta (repeatable)")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check identity suites and report deviations");
  common(verify_cmd);
  verify_cmd->add_option("--suite", o.suite, "Suite name")
      ->check(CLI::IsMember(tools::suite_names()))
      ->capture_default_str();
  verify_cmd->add_option("--n", o.n, "Symmetric group degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample_cmd) return cmd_sample(o);
    if (*estimate_cmd) return cmd_estimate(o);
    if (*learn_cmd) return cmd_learn(o);
    if (*spectrum_cmd) return cmd_spectrum(o);
    if (*fourier_cmd) return cmd_fourier(o);
    if (*lower_cmd) return cmd_lowerbound(o);
    if (*verify_cmd) return cmd_verify(o);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
