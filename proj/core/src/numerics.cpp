#include "qsplit/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "qsplit/errors.hpp"

namespace qsplit {

namespace mp = boost::multiprecision;

Rational PowerProb::value() const {
  if (is_zero()) return Rational(0);
  return inverse_power(base, *exponent);
}

BigInt ipow(int d, int e) {
  if (e < 0) throw DomainError("ipow: negative exponent");
  return mp::pow(BigInt(d), static_cast<unsigned>(e));
}

Rational inverse_power(int d, int e) { return Rational(BigInt(1), ipow(d, e)); }

double log2_bigint(const BigInt& x) {
  if (x <= 0) throw DomainError("log2 of a non-positive integer");
  const auto top_bit = static_cast<long>(mp::msb(x));
  if (top_bit < 900) return std::log2(x.convert_to<double>());
  const long shift = top_bit - 60;
  BigInt head = x >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

double log2_rational(const Rational& r) {
  if (r <= 0) throw DomainError("log2 of a non-positive rational");
  return log2_bigint(mp::numerator(r)) - log2_bigint(mp::denominator(r));
}

double to_double(const Rational& r) {
  const BigInt& num = mp::numerator(r);
  const BigInt& den = mp::denominator(r);
  if (num == 0) return 0.0;
  if (mp::msb(mp::abs(num)) < 900 && mp::msb(den) < 900) return r.convert_to<double>();
  const double sign = num < 0 ? -1.0 : 1.0;
  return sign * std::exp2(log2_rational(mp::abs(r)));
}

std::string to_string(const Rational& r) {
  const BigInt& den = mp::denominator(r);
  if (den == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + den.str();
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Rational parse_decimal(std::string text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    const std::string exp_part = text.substr(e + 1);
    std::string digits = exp_part;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
    if (!all_digits(digits)) throw DomainError("malformed number: " + text);
    exponent = std::stol(exp_part);
    text.resize(e);
  }
  std::string int_part = text;
  std::string frac_part;
  if (auto dot = text.find('.'); dot != std::string::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw DomainError("malformed number: " + text);
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw DomainError("malformed number: " + text);
  }
  BigInt num(int_part.empty() ? std::string("0") : int_part);
  for (char c : frac_part) num = num * 10 + (c - '0');
  exponent -= static_cast<long>(frac_part.size());
  Rational value(num);
  if (exponent > 0) value *= Rational(mp::pow(BigInt(10), static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(mp::pow(BigInt(10), static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty number");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in " + text);
    return num / den;
  }
  return parse_decimal(text);
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  // m in [0.5, 1): scale to a 53-bit integer mantissa.
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Rational r{BigInt(mant)};
  const int shift = e - 53;
  if (shift > 0) r *= Rational(BigInt(1) << shift);
  if (shift < 0) r /= Rational(BigInt(1) << -shift);
  return r;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double binary_entropy_derivative(double x) { return std::log2((1.0 - x) / x); }

double entropy(std::span<const Rational> dist, int log_base) {
  if (log_base < 2) throw DomainError("entropy: log base must be at least 2");
  Rational total = 0;
  for (const auto& p : dist) {
    if (p < 0) throw DomainError("entropy: negative probability");
    total += p;
  }
  if (total != 1) throw DomainError("entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (const auto& p : dist) {
    if (p == 0) continue;
    h -= to_double(p) * log2_rational(p);
  }
  return h / std::log2(static_cast<double>(log_base));
}

double entropy(std::span<const double> dist, double log_base) {
  double h = 0.0;
  for (double p : dist) {
    if (p < 0.0) throw DomainError("entropy: negative probability");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h / std::log2(log_base);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

BigInt multinomial(unsigned n, std::span<const unsigned> parts) {
  unsigned long long total = 0;
  for (unsigned p : parts) total += p;
  if (total != n) throw DomainError("multinomial: parts do not sum to n");
  BigInt r = 1;
  unsigned remaining = n;
  for (unsigned p : parts) {
    r *= binomial(remaining, p);
    remaining -= p;
  }
  return r;
}

BigInt multinomial(unsigned n, std::initializer_list<unsigned> parts) {
  return multinomial(n, std::span<const unsigned>(parts.begin(), parts.size()));
}

double f_d(int d, double beta) {
  if (d < 2) throw DomainError("f_d: d must be at least 2");
  const double rest = 1.0 - (d - 1) * beta;
  if (!(beta > 0.0 && beta < 1.0) || !(rest > 0.0)) {
    throw DomainError("f_d: requires 0 < beta < 1 and (d-1)*beta < 1");
  }
  const double spread = rest * std::log2(1.0 / rest) + (d - 1) * beta * std::log2(1.0 / beta);
  return d * beta * std::log2(static_cast<double>(d)) - spread;
}

}  // namespace qsplit
