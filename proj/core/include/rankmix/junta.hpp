#pragma once

#include <vector>

namespace rankmix {

// A real function on [n]^ell given by its nonzero values; strings are
// 1-based and need not have distinct entries.
struct SignedSparseFunction {
  int n = 0;
  int ell = 0;
  std::vector<std::vector<int>> points;
  std::vector<double> values;
};

// Validates shapes, distinct points, nonzero values and ||g||_1 = 1.
void check_signed_function(const SignedSparseFunction& g);

struct JuntaResult {
  std::vector<int> coordinates;  // U, 1-based, in the order constrained
  std::vector<int> values;       // alpha_i for each coordinate of U
  double correlation = 0.0;      // |sum_x g(x) 1[x_i = alpha_i for i in U]|
  int iterations = 0;
  int k_prime = 0;
  std::vector<int> live_start;   // distinguishing coordinates the process starts from
};

// (4/5) k^{-1} (10 k')^{-u}, k' = min(k, ell).
double junta_correlation_bound(int k, int ell, int u);

// The live-coordinate process: start from a set of at most min(k, ell)
// coordinates separating supp(g) (greedy, lowest index first); while some
// live j has FracWtMaj(j) <= 1 - 1/(10k'), take the first such j, constrain
// it to the alpha != MAJ(j) maximizing FracWt/Num (first maximizer), and
// drop the support elements that disagree. MAJ(j) is the smallest value of
// maximal count. Throws SupportOverflow when |supp(g)| > k.
JuntaResult find_correlated_junta(const SignedSparseFunction& g, int k);

}  // namespace rankmix
