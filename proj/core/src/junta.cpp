#include "rankmix/junta.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rankmix/errors.hpp"

namespace rankmix {

void check_signed_function(const SignedSparseFunction& g) {
  if (g.n < 1 || g.ell < 1) throw InvalidArgument("signed function: need n, ell >= 1");
  if (g.points.size() != g.values.size()) throw SizeMismatch("signed function: points and values differ in length");
  if (g.points.empty()) throw InvalidArgument("signed function: empty support");
  std::set<std::vector<int>> seen;
  double l1 = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const auto& x = g.points[i];
    if (static_cast<int>(x.size()) != g.ell) throw SizeMismatch("signed function: point of wrong length");
    for (int v : x)
      if (v < 1 || v > g.n) throw InvalidArgument("signed function: entry outside [n]");
    if (!seen.insert(x).second) throw InvalidArgument("signed function: repeated point");
    if (g.values[i] == 0.0 || !std::isfinite(g.values[i])) throw InvalidArgument("signed function: zero or non-finite value");
    l1 += std::abs(g.values[i]);
  }
  if (std::abs(l1 - 1.0) > 1e-9) throw InvalidArgument("signed function: l1 norm is not 1");
}

double junta_correlation_bound(int k, int ell, int u) {
  const int kp = std::min(k, ell);
  return 0.8 / k * std::pow(10.0 * kp, -u);
}

namespace {

std::vector<int> separating_coordinates(const SignedSparseFunction& g) {
  // Classes of points not yet told apart; a coordinate is kept when it
  // splits at least one class.
  std::vector<int> label(g.points.size(), 0);
  std::vector<int> chosen;
  int classes = 1;
  for (int j = 0; j < g.ell && classes < static_cast<int>(g.points.size()); ++j) {
    std::set<std::pair<int, int>> refined;
    for (std::size_t i = 0; i < g.points.size(); ++i) refined.insert({label[i], g.points[i][static_cast<std::size_t>(j)]});
    if (static_cast<int>(refined.size()) == classes) continue;
    std::vector<std::pair<int, int>> order(refined.begin(), refined.end());
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      const std::pair<int, int> key{label[i], g.points[i][static_cast<std::size_t>(j)]};
      label[i] = static_cast<int>(std::lower_bound(order.begin(), order.end(), key) - order.begin());
    }
    classes = static_cast<int>(refined.size());
    chosen.push_back(j);
  }
  return chosen;
}

}  // namespace

JuntaResult find_correlated_junta(const SignedSparseFunction& g, int k) {
  check_signed_function(g);
  if (k < 1) throw InvalidArgument("find_correlated_junta: k must be >= 1");
  if (static_cast<int>(g.points.size()) > k)
    throw SupportOverflow("find_correlated_junta: support size " + std::to_string(g.points.size()) + " exceeds k");

  JuntaResult out;
  out.k_prime = std::min(k, g.ell);
  std::vector<int> live_coords = separating_coordinates(g);
  for (int j : live_coords) out.live_start.push_back(j + 1);
  std::vector<std::size_t> live(g.points.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  const double threshold = 1.0 - 1.0 / (10.0 * out.k_prime);

  for (;;) {
    double live_weight = 0.0;
    for (std::size_t i : live) live_weight += std::abs(g.values[i]);

    int pick = -1;
    std::vector<int> num(static_cast<std::size_t>(g.n) + 1);
    std::vector<double> wt(static_cast<std::size_t>(g.n) + 1);
    int maj = 0;
    for (std::size_t c = 0; c < live_coords.size(); ++c) {
      const auto j = static_cast<std::size_t>(live_coords[c]);
      std::fill(num.begin(), num.end(), 0);
      std::fill(wt.begin(), wt.end(), 0.0);
      for (std::size_t i : live) {
        ++num[static_cast<std::size_t>(g.points[i][j])];
        wt[static_cast<std::size_t>(g.points[i][j])] += std::abs(g.values[i]);
      }
      maj = 1;
      for (int a = 2; a <= g.n; ++a)
        if (num[static_cast<std::size_t>(a)] > num[static_cast<std::size_t>(maj)]) maj = a;
      if (wt[static_cast<std::size_t>(maj)] / live_weight <= threshold) {
        pick = static_cast<int>(c);
        break;
      }
    }
    if (pick < 0) break;

    const auto j = static_cast<std::size_t>(live_coords[static_cast<std::size_t>(pick)]);
    int alpha = 0;
    double best = -1.0;
    for (int a = 1; a <= g.n; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      if (a == maj || num[ua] == 0) continue;
      const double ratio = wt[ua] / live_weight / num[ua];
      if (ratio > best) {
        best = ratio;
        alpha = a;
      }
    }
    // The separating set guarantees a second value whenever FracWtMaj < 1.
    if (alpha == 0) throw ContractError("find_correlated_junta: no admissible value on a violating coordinate");

    out.coordinates.push_back(static_cast<int>(j) + 1);
    out.values.push_back(alpha);
    live_coords.erase(live_coords.begin() + pick);
    std::vector<std::size_t> kept;
    for (std::size_t i : live)
      if (g.points[i][j] == alpha) kept.push_back(i);
    live = std::move(kept);
    ++out.iterations;
  }

  double corr = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    bool match = true;
    for (std::size_t u = 0; u < out.coordinates.size() && match; ++u)
      match = g.points[i][static_cast<std::size_t>(out.coordinates[u] - 1)] == out.values[u];
    if (match) corr += g.values[i];
  }
  out.correlation = std::abs(corr);
  return out;
}

}  // namespace rankmix
