#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// Everything here works from definitions only and avoids the library's
// algorithms it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include <rankmix/characters.hpp>
#include <rankmix/distribution.hpp>
#include <rankmix/noise.hpp>
#include <rankmix/partition.hpp>
#include <rankmix/permutation.hpp>

namespace oracle {

using rankmix::Partition;
using rankmix::Permutation;

inline std::vector<std::vector<int>> all_one_line(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i] - 1)];
  return out;
}

inline int cycles(const std::vector<int>& p) {
  std::vector<bool> seen(p.size());
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) seen[j] = true;
  }
  return c;
}

// Distances from the identity in the Cayley graph generated by all
// transpositions (left multiplication), by breadth-first search.
inline std::map<std::vector<int>, int> bfs_transposition_distance(int n) {
  std::map<std::vector<int>, int> dist;
  std::vector<int> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  std::queue<std::vector<int>> q;
  dist[e] = 0;
  q.push(e);
  while (!q.empty()) {
    auto p = q.front();
    q.pop();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        auto r = p;
        std::swap(r[static_cast<std::size_t>(a)], r[static_cast<std::size_t>(b)]);
        if (!dist.contains(r)) {
          dist[r] = dist[p] + 1;
          q.push(r);
        }
      }
    }
  }
  return dist;
}

// Partitions of n by filtering all weakly decreasing sequences.
inline std::vector<std::vector<int>> partitions_brute(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int first = std::min(n, max_part); first >= 1; --first)
    for (auto rest : partitions_brute(n - first, first)) {
      rest.insert(rest.begin(), first);
      out.push_back(rest);
    }
  return out;
}

// Standard Young tableaux of shape lambda, counted by filling boxes with
// 1..n in every order that keeps rows and columns increasing.
inline std::uint64_t count_syt(const std::vector<int>& shape) {
  std::vector<int> filled(shape.size(), 0);
  int remaining = std::accumulate(shape.begin(), shape.end(), 0);
  std::uint64_t total = 0;
  auto rec = [&](auto&& self) -> void {
    if (remaining == 0) {
      ++total;
      return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
      if (filled[r] == shape[r]) continue;
      if (r > 0 && filled[r - 1] <= filled[r]) continue;
      ++filled[r];
      --remaining;
      self(self);
      --filled[r];
      ++remaining;
    }
  };
  rec(rec);
  return total;
}

// Pmf of the noise by its definition, indexed by Permutation::rank().
inline std::vector<double> symmetric_pmf(int n, const std::vector<double>& pbar) {
  // Choose a j-subset uniformly, then a uniform permutation of it.
  std::vector<double> out(static_cast<std::size_t>(rankmix::factorial(n)), 0.0);
  for (const auto& p : all_one_line(n)) {
    const auto perm = Permutation::from_one_line(p);
    int moved = 0;
    for (int i = 0; i < n; ++i) moved += p[static_cast<std::size_t>(i)] != i + 1;
    double prob = 0.0;
    for (int j = moved; j <= n; ++j) {
      // subsets of size j containing the moved points, times 1/j!
      double subsets = 1.0;
      for (int i = 0; i < j - moved; ++i) subsets *= static_cast<double>(n - moved - i) / (i + 1);
      double total = 1.0;
      for (int i = 0; i < j; ++i) total *= static_cast<double>(n - i) / (i + 1);
      prob += pbar[static_cast<std::size_t>(j)] * subsets / total / static_cast<double>(rankmix::factorial(j));
    }
    out[perm.rank()] = prob;
  }
  return out;
}

inline std::vector<double> mallows_pmf(int n, double q) {
  std::vector<double> out(static_cast<std::size_t>(rankmix::factorial(n)), 0.0);
  double z = 0.0;
  for (const auto& p : all_one_line(n)) {
    const double w = std::pow(q, cycles(p));
    out[Permutation::from_one_line(p).rank()] = w;
    z += w;
  }
  for (double& v : out) v /= z;
  return out;
}

// Heat kernel by explicit Poisson mixture of lazy-walk matrix powers.
inline std::vector<double> heat_pmf(int n, double t) {
  const auto perms = all_one_line(n);
  const std::size_t N = perms.size();
  std::vector<std::size_t> rank(N);
  for (std::size_t i = 0; i < N; ++i) rank[i] = Permutation::from_one_line(perms[i]).rank();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < N; ++i) index[perms[i]] = i;
  std::vector<double> cur(N, 0.0), acc(N, 0.0);
  cur[0] = 1.0;
  double poisson = std::exp(-t);
  for (int step = 0; step < 200; ++step) {
    for (std::size_t i = 0; i < N; ++i) acc[i] += poisson * cur[i];
    std::vector<double> next(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      if (cur[i] == 0.0) continue;
      for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
          auto r = perms[i];
          if (a != b) {
            // swap values a and b: left multiplication by (a b)
            for (int& v : r) {
              if (v == a) v = b;
              else if (v == b) v = a;
            }
          }
          next[index[r]] += cur[i] / (n * n);
        }
      }
    }
    cur = std::move(next);
    poisson *= t / (step + 1);
  }
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) out[rank[i]] = acc[i];
  return out;
}

inline std::vector<double> noise_pmf(const rankmix::NoiseModel& m) {
  const auto& p = m.params();
  if (const auto* s = std::get_if<rankmix::SymmetricNoise>(&p)) return symmetric_pmf(m.n(), s->pbar);
  if (const auto* h = std::get_if<rankmix::HeatKernelNoise>(&p)) return heat_pmf(m.n(), h->t);
  return mallows_pmf(m.n(), std::exp(std::get<rankmix::CayleyMallowsNoise>(p).theta));
}

// (1/dim) sum_g K(g) chi_mu(g): the multiplier of a class function K at mu.
inline double character_sum_multiplier(const std::vector<double>& pmf, int n, const Partition& mu) {
  double s = 0.0;
  for (const auto& p : all_one_line(n)) {
    const auto perm = Permutation::from_one_line(p);
    s += pmf[perm.rank()] * static_cast<double>(rankmix::character(mu, rankmix::cycle_type(perm)));
  }
  return s / static_cast<double>(rankmix::irrep_dimension(mu));
}

// Pr[sigma(i_r) = j_r for all r] by scanning atoms.
inline double marginal(const rankmix::SparseRankingMixture& f, const std::vector<int>& ibar,
                       const std::vector<int>& jbar) {
  double s = 0.0;
  for (const auto& a : f.atoms()) {
    bool ok = true;
    for (std::size_t r = 0; r < ibar.size(); ++r) ok = ok && a.perm(ibar[r]) == jbar[r];
    if (ok) s += a.weight;
  }
  return s;
}

inline double tv(const rankmix::SparseRankingMixture& a, const rankmix::SparseRankingMixture& b) {
  std::map<std::vector<int>, double> diff;
  for (const auto& x : a.atoms()) diff[x.perm.one_line()] += x.weight;
  for (const auto& x : b.atoms()) diff[x.perm.one_line()] -= x.weight;
  double s = 0.0;
  for (const auto& [_, v] : diff) s += std::abs(v);
  return s / 2.0;
}

}  // namespace oracle
