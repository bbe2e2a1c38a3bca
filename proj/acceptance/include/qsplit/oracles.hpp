#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/numerics.hpp"
#include "qsplit/strategy.hpp"

namespace qsplit::oracle {

// Sizes of all subsets of mass exactly 1/2, by enumerating every subset (n <= 24).
std::map<int, BigInt> brute_splitting_counts(const DAdicDistribution& mu);
// Every subset of mass exactly 1/2 as a bit mask (n <= 24).
std::vector<std::uint32_t> brute_splitting_sets(const DAdicDistribution& mu);

// Minimum of sum pi_i l_i over all length vectors satisfying the d-ary Kraft inequality.
Rational brute_code_cost(const std::vector<Rational>& pi, int d);

// sum_i mu_i e_i, the base-d entropy of a d-adic distribution.
Rational dadic_entropy(const DAdicDistribution& mu);

// True when some question gives every part mass exactly 1/d (direct rational sums).
bool brute_hits(const QuestionSet& Q, const DAdicDistribution& mu);

// Splits a random element into d children until at least n elements exist, then shuffles.
DAdicDistribution random_dadic(int d, int n, std::mt19937_64& rng);
// Positive integer weights in [1, 20], normalized.
std::vector<Rational> random_distribution(int n, std::mt19937_64& rng);

}  // namespace qsplit::oracle
