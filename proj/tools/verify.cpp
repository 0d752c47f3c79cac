#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <rankmix/characters.hpp>
#include <rankmix/errors.hpp>
#include <rankmix/lower_bound.hpp>
#include <rankmix/noise.hpp>
#include <rankmix/tabloid.hpp>

namespace rankmix::tools {

namespace {

using boost::multiprecision::cpp_rational;

std::vector<NoiseModel> reference_models(int n) {
  std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
  p[0] = 0.6;
  p[static_cast<std::size_t>(std::min(2, n))] += 0.4;
  return {NoiseModel::symmetric(n, p), NoiseModel::heat_kernel(n, 1.0), NoiseModel::cayley_mallows(n, 1.1)};
}

std::vector<IdentityCheck> partitions_suite(int n) {
  std::vector<IdentityCheck> out;
  double sum = 0.0, paths = 0.0, up = 0.0;
  for (const auto& l : all_partitions(n)) {
    const auto d = irrep_dimension(l);
    sum += static_cast<double>(d) * static_cast<double>(d);
    paths = std::max(paths, std::abs(static_cast<double>(lattice_paths(Partition{}, l)) - static_cast<double>(d)));
  }
  for (int ell = 0; ell < n; ++ell)
    for (const auto& mu : up_set(hook_partition(n, ell))) up = std::max(up, static_cast<double>(std::max(0, n - ell - mu.row(0))));
  out.push_back({"partitions", "sum of squared dimensions equals n!", std::abs(sum - static_cast<double>(factorial(n))), 0.0});
  out.push_back({"partitions", "hook length dimension equals Young lattice path count", paths, 0.0});
  out.push_back({"partitions", "up-set of the hook shape has first row >= n-ell", up, 0.0});
  return out;
}

std::vector<IdentityCheck> characters_suite(int n) {
  const auto t = character_table(n);
  const auto p = t.partitions().size();
  const auto nf = static_cast<double>(factorial(n));
  double row = 0.0, col = 0.0, ratio = 0.0, stanley = 0.0;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) {
      double r = 0.0, c = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        r += static_cast<double>(t.class_size(k)) * static_cast<double>(t.value(a, k) * t.value(b, k));
        c += static_cast<double>(t.value(k, a) * t.value(k, b));
      }
      row = std::max(row, std::abs(r - (a == b ? nf : 0.0)));
      col = std::max(col, std::abs(c - (a == b ? nf / static_cast<double>(t.class_size(a)) : 0.0)));
    }
  if (n >= 2) {
    std::vector<int> tt(static_cast<std::size_t>(n - 1), 1);
    tt[0] = 2;
    const Partition transposition(tt);
    for (const auto& mu : t.partitions()) {
      cpp_rational ds = 0;
      for (int j = 1; j <= mu.length(); ++j) ds += (mu.row(j - 1) - j) * (mu.row(j - 1) - j + 1) - j * (j - 1);
      ds /= n * (n - 1);
      const cpp_rational mn(character(mu, transposition), static_cast<long long>(irrep_dimension(mu)));
      ratio = std::max(ratio, std::abs(static_cast<double>(mn - ds)));
    }
  }
  for (const cpp_rational& q : {cpp_rational(1, 2), cpp_rational(2), cpp_rational(7, 3)})
    for (std::size_t a = 0; a < p; ++a) {
      const auto& mu = t.partitions()[a];
      cpp_rational lhs = 0;
      for (std::size_t k = 0; k < p; ++k) {
        cpp_rational qc = 1;
        for (int i = 0; i < t.partitions()[k].length(); ++i) qc *= q;
        lhs += qc * static_cast<long long>(t.class_size(k)) * t.value(a, k);
      }
      lhs /= static_cast<long long>(factorial(n));
      cpp_rational rhs = 1;
      for (const auto& cell : cell_annotations(mu)) rhs *= (q + cell.content) / cell.hook;
      stanley = std::max(stanley, std::abs(static_cast<double>(lhs - rhs)));
    }
  return {{"characters", "row orthogonality", row, 0.0},
          {"characters", "column orthogonality", col, 0.0},
          {"characters", "transposition character ratio from row lengths", ratio, 0.0},
          {"characters", "q-weighted cycle sum equals content product", stanley, 0.0}};
}

std::vector<IdentityCheck> noise_suite(int n) {
  std::vector<IdentityCheck> out;
  const auto perms = enumerate_sn(n);
  std::vector<Partition> types;
  types.reserve(perms.size());
  for (const auto& g : perms) types.push_back(cycle_type(g).lengths);
  for (const auto& m : reference_models(n)) {
    const auto pmf = noise_pmf_exact(m);
    double dev = 0.0;
    for (const auto& mu : all_partitions(n)) {
      double s = 0.0;
      for (std::size_t r = 0; r < perms.size(); ++r)
        s += pmf.at_rank(perms[r].rank()) * static_cast<double>(character(mu, types[r]));
      s /= static_cast<double>(irrep_dimension(mu));
      dev = std::max(dev, std::abs(s - multiplier(m, mu).value));
    }
    out.push_back({"noise", m.name() + " multiplier equals character sum", dev, 1e-9});
  }
  return out;
}

std::vector<IdentityCheck> tabloid_suite(int n) {
  std::vector<IdentityCheck> out;
  for (const auto& m : reference_models(n)) {
    double eig = 0.0, sigma = 0.0;
    for (int ell = 1; ell <= std::min(2, n - 1); ++ell) {
      const auto K = exact_fourier(noise_pmf_exact(m), ell).entries();
      std::vector<double> allowed;
      for (const auto& mu : up_set(hook_partition(n, ell))) allowed.push_back(multiplier(m, mu).value);
      const Eigen::EigenSolver<Eigen::MatrixXd> es(K, false);
      for (const auto& ev : es.eigenvalues()) {
        double best = 1e300;
        for (double c : allowed) best = std::min(best, std::abs(ev - std::complex<double>(c, 0.0)));
        eig = std::max(eig, best);
      }
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
      sigma = std::max(sigma, std::abs(svd.singularValues().minCoeff() - min_multiplier_up(m, ell)));
    }
    out.push_back({"tabloid", m.name() + " eigenvalues lie among up-set multipliers", eig, 1e-8});
    out.push_back({"tabloid", m.name() + " smallest singular value equals smallest multiplier", sigma, 1e-8});
  }
  return out;
}

std::vector<IdentityCheck> lowerbound_suite() {
  const auto pair = build_hard_pair(2, 1);
  double disjoint = 0.0;
  for (const auto& a : pair.f1.atoms()) disjoint = std::max(disjoint, pair.f2.weight_of(a.perm));
  const auto at_one = verify_separation(pair, 0.0);
  double excess = 0.0;
  for (double q : {1.05, 1.1, 1.2}) {
    const auto s = verify_separation(pair, std::log(q));
    excess = std::max(excess, std::max(0.0, s.tv - 2.0 * (q - 1.0) * (q - 1.0)));
  }
  return {{"lowerbound", "hard pair supports are disjoint", disjoint, 0.0},
          {"lowerbound", "noisy pair identical at theta = 0", at_one.tv, 1e-10},
          {"lowerbound", "noisy TV within 2 eta^2 near q = 1", excess, 0.0}};
}

}  // namespace

std::vector<std::string> suite_names() { return {"partitions", "characters", "noise", "tabloid", "lowerbound", "all"}; }

std::vector<IdentityCheck> run_suite(const std::string& suite, int n) {
  if (n < 1) throw InvalidArgument("verify: --n must be >= 1");
  if (suite == "partitions") return partitions_suite(n);
  if (suite == "characters") return characters_suite(n);
  if (suite == "noise") return noise_suite(n);
  if (suite == "tabloid") {
    if (n < 2) throw InvalidArgument("verify: the tabloid suite needs n >= 2");
    return tabloid_suite(n);
  }
  if (suite == "lowerbound") return lowerbound_suite();
  if (suite == "all") {
    std::vector<IdentityCheck> out;
    for (const auto& name : suite_names()) {
      if (name == "all" || (name == "tabloid" && n < 2)) continue;
      auto part = run_suite(name, n);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw InvalidArgument("verify: unknown suite '" + suite + "'");
}

}  // namespace rankmix::tools
