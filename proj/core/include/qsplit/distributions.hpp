#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsplit/limits.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

// A distribution on X_n whose nonzero masses are powers of 1/d.
struct DAdicDistribution {
  static constexpr int kZero = -1;

  int d = 2;
  std::vector<int> exponents;  // mass of x_i is d^(-exponents[i]), or zero when kZero

  // Validates the exponents: nonzero entries in [0, n-1] and an exact total of 1.
  static DAdicDistribution from_exponents(int d, std::vector<int> exponents);

  std::size_t size() const { return exponents.size(); }
  bool is_zero(std::size_t i) const { return exponents[i] == kZero; }
  PowerProb prob(std::size_t i) const;
  Rational probability(std::size_t i) const;
  std::vector<Rational> probabilities() const;

  std::size_t support_size() const;
  bool is_full_support() const { return support_size() == size(); }
  bool is_dirac() const { return support_size() == 1; }
  // All nonzero masses equal (uniform on the support; Dirac included).
  bool is_constant() const;
  // Sorted by nonincreasing probability, zeros last.
  bool is_canonical() const;
  DAdicDistribution canonical() const;
  int max_exponent() const;

  friend bool operator==(const DAdicDistribution&, const DAdicDistribution&) = default;
};

// "(1/2,1/4,0)".
std::string describe(const DAdicDistribution& mu);
// Orders labeled distributions by exponent vectors with zero treated as the largest exponent.
bool labeled_less(const DAdicDistribution& lhs, const DAdicDistribution& rhs);

struct EnumerationFilter {
  bool full_support = true;
  bool non_constant = true;  // drop distributions whose nonzero masses are all equal
  bool non_dirac = true;     // drop point masses
  bool canonical = true;     // false: every labeling
};

// Number of canonical full-support d-adic distributions on exactly m elements.
BigInt count_canonical(int m, int d);
// Exact number of distributions enumerate_dadic would visit.
BigInt count_enumerated(int n, int d, const EnumerationFilter& filter);

// Visits every d-adic distribution on n elements matching the filter exactly once.
// Canonical output is in increasing lexicographic order of exponent vectors.
void enumerate_dadic(int n, int d, const EnumerationFilter& filter,
                     const std::function<void(const DAdicDistribution&)>& visit,
                     const Limits& limits = default_limits());
std::vector<DAdicDistribution> enumerate_dadic_list(int n, int d, const EnumerationFilter& filter,
                                                    const Limits& limits = default_limits());

struct TailReport {
  std::vector<int> indices;  // 0-based, increasing
  int a = 0;
  Rational total;
};

// Largest set whose masses are 2^-(a+1), ..., 2^-(a+|T|-1), 2^-(a+|T|-1) with every other
// nonzero element at least 2^-a. Zero-mass elements are ignored.
TailReport tail(const DAdicDistribution& mu);
// Largest T with mu(T) = d^-a (a >= 1), no zero members, and every other nonzero element
// at least d^-a. Ties prefer larger a, then the smallest indicator vector.
TailReport generalized_tail(const DAdicDistribution& mu);

// (c, b) encoding of a full-support dyadic distribution on n = beta * 2^k elements.
struct AmountSequence {
  int b = 0;
  Rational beta = 1;
  std::vector<Rational> c;

  // Index of the last positive entry; -1 if none.
  int last_index() const;
  // Checks sum c_i 2^(b-i) beta = 1, sum c_i <= 1, c_0 > 0, entries in [0,1], beta in [1,2).
  void validate() const;
};

// Splits n = beta * 2^k with beta in [1,2).
std::pair<Rational, int> split_size(long long n);

bool is_k_feasible(const AmountSequence& seq, int k);
DAdicDistribution from_amount_sequence(const AmountSequence& seq, int k);
AmountSequence to_amount_sequence(const DAdicDistribution& mu, int k);

// Length m of the prefix with mass exactly d^-a; exponents must be nondecreasing and nonzero.
std::size_t prefix_split(int d, std::span<const int> exponents, int a);
// Consecutive half-open intervals [begin, end) each of mass exactly d^-a.
std::vector<std::pair<std::size_t, std::size_t>> prefix_intervals(int d, std::span<const int> exponents, int a);

}  // namespace qsplit
