#pragma once

#include "qsplit/distributions.hpp"
#include "qsplit/limits.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

// 1 + (d-1) / d^(d/(d-1)).
double magic_constant(int d);
// 1 / (d^(d/(d-1)) - 1 + d), the minimizer of f_d.
double optimal_beta(int d);
// log2(d^(d/(d-1)) / (d^(d/(d-1)) + d - 1)).
double f_opt(int d);

struct DaryBoundReport {
  int d = 2;
  double magic_constant = 0.0;
  double optimal_beta = 0.0;
  double f_opt = 0.0;
  double two_minus_mc = 0.0;
};

DaryBoundReport dary_report(int d);

struct HardDistribution {
  DAdicDistribution mu;
  int n = 0;
  int a = 0;
  Rational beta_prime;  // d^a / (d n)
  int head = 0;         // elements of mass d^-a
  int tail = 0;         // elements of the generalized tail, total mass d^-a
};

// n is the largest value <= floor(d^a / (d beta*)) with n = 1 mod (d-1); the tail is the chain
// d-1 elements at each of d^-(a+1), d^-(a+2), ... closed by d elements at the deepest level.
HardDistribution hard_distribution(int d, int a);

struct ReductionReport {
  int n = 0;
  int d = 2;
  Rational rho;
  std::size_t q = 0;
  double lower = 0.0;         // 1 / rho
  double upper = 0.0;         // 2 n^(2d) ln n / rho
  double binary_upper = 0.0;  // n^2 log2 n / rho, d = 2 only (0 otherwise)
  bool holds = false;
};

// Evaluates 1/rho_min^(d)(n) <= q^(d)(n) <= 2 n^(2d) ln n / rho_min^(d)(n) exactly at small n.
ReductionReport verify_reduction(int n, int d, const Limits& limits = default_limits());

}  // namespace qsplit
