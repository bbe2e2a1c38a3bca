#include "qsplit/dary_bounds.hpp"

#include <cmath>

#include "qsplit/errors.hpp"
#include "qsplit/hitters.hpp"
#include "qsplit/splitting.hpp"

namespace qsplit {

namespace {

void check_arity(int d) {
  if (d < 2) throw DomainError("d must be at least 2");
}

// d^(d/(d-1)).
double dd(int d) { return std::pow(static_cast<double>(d), static_cast<double>(d) / (d - 1)); }

}  // namespace

double magic_constant(int d) {
  check_arity(d);
  if (d == 2) return 1.25;
  return 1.0 + (d - 1) / dd(d);
}

double optimal_beta(int d) {
  check_arity(d);
  return 1.0 / (dd(d) - 1.0 + d);
}

double f_opt(int d) {
  check_arity(d);
  const double x = dd(d);
  return std::log2(x / (x + d - 1));
}

DaryBoundReport dary_report(int d) {
  DaryBoundReport r;
  r.d = d;
  r.magic_constant = magic_constant(d);
  r.optimal_beta = optimal_beta(d);
  r.f_opt = f_opt(d);
  r.two_minus_mc = 2.0 - r.magic_constant;
  return r;
}

HardDistribution hard_distribution(int d, int a) {
  check_arity(d);
  if (a < 1) throw DomainError("a must be at least 1");
  const double da = std::pow(static_cast<double>(d), a);
  if (da > 1e7) throw DomainError("d^a too large for an explicit distribution");
  long long n = static_cast<long long>(std::floor(da / (d * optimal_beta(d))));
  while (n > 0 && (n - 1) % (d - 1) != 0) --n;
  const long long head = static_cast<long long>(da) - 1;
  if (n < d + 1 || n <= head) throw DomainError("construction needs n >= d + 1");

  HardDistribution out;
  out.n = static_cast<int>(n);
  out.a = a;
  out.beta_prime = Rational(ipow(d, a), BigInt(d) * n);
  out.head = static_cast<int>(head);
  out.tail = static_cast<int>(n - head);
  std::vector<int> exps(static_cast<std::size_t>(head), a);
  const int levels = (out.tail - 1) / (d - 1);
  for (int j = 1; j <= levels; ++j) {
    const int copies = j == levels ? d : d - 1;
    exps.insert(exps.end(), static_cast<std::size_t>(copies), a + j);
  }
  if (levels == 0) exps.push_back(a);
  out.mu = DAdicDistribution::from_exponents(d, std::move(exps));
  return out;
}

ReductionReport verify_reduction(int n, int d, const Limits& limits) {
  check_arity(d);
  if (n < 2) throw DomainError("n must be at least 2");
  ReductionReport r;
  r.n = n;
  r.d = d;
  r.rho = rho_min_d(n, d, limits).rho;
  r.q = exact_min_hitter(n, d, limits).size;
  const double inv = 1.0 / to_double(r.rho);
  r.lower = inv;
  r.upper = 2.0 * std::pow(static_cast<double>(n), 2.0 * d) * std::log(static_cast<double>(n)) * inv;
  const Rational q(static_cast<long long>(r.q));
  bool holds = q * r.rho >= 1 && static_cast<double>(r.q) <= r.upper;
  if (d == 2) {
    r.binary_upper = static_cast<double>(n) * n * std::log2(static_cast<double>(n)) * inv;
    holds = holds && static_cast<double>(r.q) <= r.binary_upper;
  }
  r.holds = holds;
  return r;
}

}  // namespace qsplit
