#include "qsplit/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "qsplit/errors.hpp"
#include "qsplit/gbeta.hpp"

namespace qsplit {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// log2 of x when x is a power of two, else -1.
int log2_exact(const BigInt& x) {
  if (x <= 0 || (x & (x - 1)) != 0) return -1;
  return static_cast<int>(boost::multiprecision::msb(x));
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Rational floor_rational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && Rational(q) != r) q -= 1;
  return Rational(q);
}

Rational pow2(int e) { return e >= 0 ? Rational(ipow(2, e)) : inverse_power(2, -e); }

Rational alpha_at(const std::vector<Rational>& alpha, std::size_t i) {
  return i < alpha.size() ? alpha[i] : Rational(0);
}

Rational s_threshold(int b) { return inverse_power(2, 2 * (b + 5)); }

int s_limit(const AmountSequence& c) {
  return std::min<int>(static_cast<int>(c.c.size()) - 1, 1 << std::min(c.b + 4, 30));
}

void check_alpha(const std::vector<Rational>& alpha) {
  for (const auto& a : alpha) {
    if (a < 0 || a > 1) throw DomainError("alpha entries must lie in [0,1]");
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
}

std::vector<double> as_doubles(const std::vector<Rational>& v, std::size_t size) {
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < size && i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

// Bounded indices with c_i and c~_i above the s-index threshold.
std::vector<int> transfer_candidates(const AmountSequence& c, const AmountSequence& rounded) {
  const Rational thr = s_threshold(c.b);
  std::vector<int> out;
  const int limit = std::min(s_limit(c), static_cast<int>(rounded.c.size()) - 1);
  for (int i = 0; i <= limit; ++i) {
    if (c.c[i] > thr && rounded.c[i] > thr) out.push_back(i);
  }
  return out;
}

}  // namespace

Rational exact_residual(const AmountSequence& c, const std::vector<Rational>& alpha) {
  Rational sum = 0;
  for (std::size_t i = 0; i < c.c.size(); ++i) sum += alpha_at(alpha, i) * c.c[i] * inverse_power(2, static_cast<int>(i));
  return sum - 1 / (c.beta * Rational(ipow(2, c.b + 1)));
}

double payoff_exact(const AmountSequence& c, const std::vector<Rational>& alpha) {
  return payoff_P(as_doubles(c.c, c.c.size()), as_doubles(alpha, c.c.size()));
}

bool is_k_feasible_alpha(const AmountSequence& c, const std::vector<Rational>& alpha, int k) {
  if (!is_k_feasible(c, k)) return false;
  const Rational scale = c.beta * Rational(ipow(2, k));
  if (!is_integer(scale)) return false;
  for (std::size_t i = 0; i < c.c.size(); ++i) {
    const Rational a = alpha_at(alpha, i);
    if (a < 0 || a > 1 || !is_integer(a * c.c[i] * scale)) return false;
  }
  return true;
}

int min_feasible_k(const AmountSequence& c, int max_k) {
  int k = log2_exact(denominator(c.beta));
  if (k < 0) return -1;
  for (const auto& ci : c.c) {
    const int e = log2_exact(denominator(Rational(ci * c.beta)));
    if (e < 0) return -1;
    k = std::max(k, e);
  }
  return k <= max_k ? k : -1;
}

std::pair<int, int> find_s_indices_exact(const AmountSequence& c, const std::vector<Rational>& alpha) {
  const Rational thr = s_threshold(c.b);
  const Rational three_quarters(3, 4);
  int s1 = -1, s2 = -1;
  for (int i = 0; i <= s_limit(c); ++i) {
    if (c.c[i] <= thr) continue;
    const Rational a = alpha_at(alpha, static_cast<std::size_t>(i));
    if (s1 < 0 && a > thr) s1 = i;
    if (s2 < 0 && a < three_quarters) s2 = i;
  }
  if (s1 < 0 || s2 < 0) throw NumericError("find_s_indices: no qualifying index (alpha infeasible for c?)");
  return {s1, s2};
}

AlphaRoundingResult round_alpha_feasible(const AmountSequence& c, const std::vector<Rational>& alpha,
                                         double epsilon) {
  c.validate();
  check_alpha(alpha);
  check_epsilon(epsilon);
  const Rational residual = exact_residual(c, alpha);
  if (std::abs(to_double(residual)) > epsilon) throw DomainError("alpha misses the constraint by more than epsilon");
  const int K0 = min_feasible_k(c);
  if (K0 < 0) throw DomainError("c is not K-feasible for any K (beta and c_i beta must be dyadic)");

  AlphaRoundingResult out;
  out.epsilon_used = epsilon;
  const std::size_t L = c.c.size();
  if (residual == 0) {
    for (int k = K0; k <= K0 + 16; ++k) {
      if (is_k_feasible_alpha(c, alpha, k)) {
        out.K = k;
        out.alpha.assign(alpha.begin(), alpha.begin() + std::min(alpha.size(), L));
        out.alpha.resize(L, Rational(0));
        out.unchanged = true;
        return out;
      }
    }
  }

  const int s = find_s_indices_exact(c, alpha).second;
  const double base = payoff_exact(c, alpha);
  for (int K = std::max(K0, c.b + 1); K <= K0 + 160; ++K) {
    const Rational scale = c.beta * Rational(ipow(2, K));
    std::vector<Rational> count(L), chosen(L);
    for (std::size_t i = 0; i < L; ++i) count[i] = c.c[i] * scale;
    // Each chosen count m_i contributes m_i 2^(s-i) to 2^s times the constraint, which must be integral.
    Rational rest = Rational(ipow(2, s + K - c.b - 1));
    for (std::size_t i = 0; i < L; ++i) {
      if (static_cast<int>(i) == s) continue;
      const Rational target = alpha_at(alpha, i) * count[i];
      if (static_cast<int>(i) < s) {
        chosen[i] = floor_rational(target);
      } else {
        const Rational g = pow2(static_cast<int>(i) - s);
        chosen[i] = floor_rational(target / g) * g;
      }
      rest -= chosen[i] * pow2(s - static_cast<int>(i));
    }
    if (rest < 0 || rest > count[s]) continue;
    chosen[s] = rest;
    std::vector<Rational> tilde(L, Rational(0));
    for (std::size_t i = 0; i < L; ++i) {
      if (count[i] != 0) tilde[i] = chosen[i] / count[i];
    }
    const double delta = payoff_exact(c, tilde) - base;
    if (std::abs(delta) <= epsilon) {
      out.K = K;
      out.alpha = std::move(tilde);
      out.s = s;
      out.delta_P = delta;
      return out;
    }
  }
  throw NumericError("round_alpha_feasible: no grid within the K search range meets epsilon");
}

CRoundingResult round_c_feasible(const AmountSequence& c, double epsilon) {
  c.validate();
  check_epsilon(epsilon);
  const int Kbeta = log2_exact(denominator(c.beta));
  if (Kbeta < 0) throw DomainError("beta must be a dyadic rational");

  CRoundingResult out;
  out.epsilon_used = epsilon;
  const std::size_t L = c.c.size();
  if (const int K0 = min_feasible_k(c, 24); K0 >= 0) {
    out.K = K0;
    out.c = c;
    out.eps.assign(L, Rational(0));
    out.unchanged = true;
    return out;
  }

  const double thr = to_double(s_threshold(c.b));
  for (int t = 0; t <= 200; ++t) {
    const Rational grid = c.beta * Rational(ipow(2, t));
    AmountSequence tilde = c;
    std::vector<Rational> eps(L, Rational(0));
    Rational eps0 = 0;
    for (std::size_t i = 1; i < L; ++i) {
      tilde.c[i] = floor_rational(c.c[i] * grid) / grid;
      eps[i] = c.c[i] - tilde.c[i];
      eps0 += eps[i] * inverse_power(2, static_cast<int>(i));
    }
    eps[0] = eps0;
    tilde.c[0] = c.c[0] + eps0;

    double E = 0.0;
    for (const auto& e : eps) E += to_double(e);
    double delta_max = 0.0;
    for (int s : transfer_candidates(c, tilde)) {
      const Rational cs = std::min(c.c[s], tilde.c[s]);
      delta_max = std::max(delta_max, to_double(pow2(s) * eps0 / cs));
    }
    auto hb = [](double x) { return binary_entropy(std::min(x, 0.5)); };
    const double bound = E + hb(delta_max) + hb(E + delta_max);
    if (bound > epsilon || delta_max > thr) continue;

    out.K = std::max({t + static_cast<int>(L) - 1, c.b, Kbeta, t});
    while (!is_k_feasible(tilde, out.K)) ++out.K;
    tilde.validate();
    out.c = std::move(tilde);
    out.eps = std::move(eps);
    out.delta_P = bound;
    return out;
  }
  throw NumericError("round_c_feasible: epsilon too small for the grid search range");
}

std::vector<Rational> alpha_transfer(const AmountSequence& c, const CRoundingResult& rounded,
                                     const std::vector<Rational>& alpha_tilde) {
  check_alpha(alpha_tilde);
  if (exact_residual(rounded.c, alpha_tilde) != 0) throw DomainError("alpha~ is not feasible for the rounded sequence");
  std::vector<Rational> alpha(c.c.size(), Rational(0));
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = alpha_at(alpha_tilde, i);
  const Rational r = exact_residual(c, alpha);
  if (r == 0) return alpha;

  const Rational thr = s_threshold(c.b);
  const Rational three_quarters(3, 4);
  for (int s : transfer_candidates(c, rounded.c)) {
    const Rational a = alpha[s];
    if (r > 0 ? !(a > thr) : !(a < three_quarters)) continue;
    const Rational moved = a - pow2(s) * r / c.c[s];
    if (moved < 0 || moved > 1) continue;
    alpha[s] = moved;
    return alpha;
  }
  throw NumericError("alpha_transfer: no index can absorb the correction");
}

}  // namespace qsplit
