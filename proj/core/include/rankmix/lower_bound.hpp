#pragma once

#include <cstdint>
#include <vector>

#include "rankmix/distribution.hpp"
#include "rankmix/partition.hpp"

namespace rankmix {

// Two disjointly supported mixtures on S_m, m = t(t+j), whose difference is
// the character of the (t+j) x t rectangle scaled by 1/C_sq.
struct HardPair {
  int t = 0;
  int j = 0;
  int m = 0;
  Partition shape;
  std::vector<std::int64_t> chi;  // chi_sq by permutation rank
  std::int64_t c_sq = 0;          // sum of the positive character values
  SparseRankingMixture f1;
  SparseRankingMixture f2;
};

HardPair build_hard_pair(int t, int j, int cap = kDefaultEnumerationCap);

struct SquareMultiplier {
  double value = 0.0;
  double eta = 0.0;    // |e^theta - j|
  double bound = 0.0;  // eta^t
  bool bound_applies = false;  // eta <= 1/2
};

// Cayley-Mallows multiplier at the rectangle; any real theta (q = e^theta > 0).
SquareMultiplier square_multiplier(const HardPair& pair, double theta);

struct Separation {
  double theta = 0.0;
  double eta = 0.0;
  double multiplier = 0.0;
  double tv = 0.0;     // exact TV(M * f1, M * f2)
  double bound = 0.0;  // 2 eta^t
  bool bound_applies = false;
  bool pass = true;    // tv <= bound whenever the bound applies
};

Separation verify_separation(const HardPair& pair, double theta, int cap = kDefaultEnumerationCap);

struct DistinguisherResult {
  int trials = 0;
  int correct = 0;
  double accuracy = 0.0;
};

// Each trial picks f1 or f2 by a fair coin, draws `samples` permutations from
// the noisy mixture and guesses by the exact likelihood ratio.
DistinguisherResult likelihood_distinguisher(const HardPair& pair, double theta, int samples, int trials, Rng& rng,
                                             int cap = kDefaultEnumerationCap);

}  // namespace rankmix
