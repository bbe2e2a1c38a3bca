#pragma once

#include <utility>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

// sum_i alpha_i c_i / 2^i - 1 / (beta 2^(b+1)), exactly.
Rational exact_residual(const AmountSequence& c, const std::vector<Rational>& alpha);
// payoff_P evaluated from exact inputs.
double payoff_exact(const AmountSequence& c, const std::vector<Rational>& alpha);
// Every chosen count alpha_i c_i beta 2^k is an integer (and c itself is k-feasible).
bool is_k_feasible_alpha(const AmountSequence& c, const std::vector<Rational>& alpha, int k);
// Least k with c k-feasible, or -1 when no k <= max_k works.
int min_feasible_k(const AmountSequence& c, int max_k = 4096);
// Exact counterpart of find_s_indices.
std::pair<int, int> find_s_indices_exact(const AmountSequence& c, const std::vector<Rational>& alpha);

struct AlphaRoundingResult {
  int K = 0;
  std::vector<Rational> alpha;
  int s = -1;  // index that absorbs the constraint; -1 when unchanged
  double delta_P = 0.0;
  double epsilon_used = 0.0;
  bool unchanged = false;
};

// Snaps alpha to a grid on which every chosen count is integral for n = beta 2^K, restoring the
// constraint exactly through the index s2 of find_s_indices. alpha may miss the constraint by at
// most epsilon; K grows until |P(c, alpha~) - P(c, alpha)| <= epsilon.
AlphaRoundingResult round_alpha_feasible(const AmountSequence& c, const std::vector<Rational>& alpha,
                                         double epsilon);

struct CRoundingResult {
  int K = 0;
  AmountSequence c;
  std::vector<Rational> eps;  // eps_0 = c~_0 - c_0 >= 0, eps_i = c_i - c~_i >= 0 for i >= 1
  double delta_P = 0.0;       // bound on |P(c~, alpha~) - P(c, alpha_transfer(alpha~))|
  double epsilon_used = 0.0;
  bool unchanged = false;
};

// Rounds c_i (i >= 1) down to the grid l / (beta 2^t) and raises c_0 to keep the mass identity.
CRoundingResult round_c_feasible(const AmountSequence& c, double epsilon);

// Feasible alpha for the original c from a feasible alpha~ of the rounded sequence.
std::vector<Rational> alpha_transfer(const AmountSequence& c, const CRoundingResult& rounded,
                                     const std::vector<Rational>& alpha_tilde);

}  // namespace qsplit
