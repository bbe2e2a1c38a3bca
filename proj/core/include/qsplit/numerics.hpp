#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsplit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A probability of the form base^(-exponent), or an exact zero.
struct PowerProb {
  int base = 2;
  std::optional<int> exponent;  // empty means probability zero

  static PowerProb zero(int base) { return PowerProb{base, std::nullopt}; }
  static PowerProb of(int base, int exponent) { return PowerProb{base, exponent}; }

  bool is_zero() const { return !exponent.has_value(); }
  Rational value() const;

  friend bool operator==(const PowerProb&, const PowerProb&) = default;
};

// d^e as an exact integer.
BigInt ipow(int d, int e);
// d^(-e) as an exact rational.
Rational inverse_power(int d, int e);

double to_double(const Rational& r);
std::string to_string(const Rational& r);  // "p/q", or "p" when the denominator is 1
// Accepts "p/q", integers and finite decimals ("1.25", "-0.5", "3e-2").
Rational parse_rational(const std::string& text);
// Nearest rational to a double; exact for every finite double.
Rational exact_from_double(double x);

// log2 of a positive rational, accurate even when num/den overflow double.
double log2_rational(const Rational& r);
double log2_bigint(const BigInt& x);

double binary_entropy(double x);
// Derivative of the binary entropy: log2((1-x)/x).
double binary_entropy_derivative(double x);
double entropy(std::span<const Rational> dist, int log_base);
double entropy(std::span<const double> dist, double log_base);

BigInt binomial(unsigned n, unsigned k);
BigInt multinomial(unsigned n, std::span<const unsigned> parts);
BigInt multinomial(unsigned n, std::initializer_list<unsigned> parts);

double f_d(int d, double beta);

}  // namespace qsplit
