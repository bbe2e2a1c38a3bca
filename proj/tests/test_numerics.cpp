#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsplit/errors.hpp"
#include "qsplit/numerics.hpp"

using namespace qsplit;

TEST(BinaryEntropy, Boundaries) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
}

TEST(BinaryEntropy, MatchesLongDoubleFormula) {
  const long double x = 0.2L;
  const long double ref = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
  EXPECT_NEAR(binary_entropy(0.2), static_cast<double>(ref), 1e-12);
  EXPECT_NEAR(binary_entropy(0.2), 0.721928, 1e-6);
}

TEST(BinaryEntropy, RejectsOutOfRange) {
  EXPECT_THROW(binary_entropy(-0.1), DomainError);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
}

TEST(BinaryEntropy, SymmetricAndConcave) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng), y = u(rng), t = u(rng);
    EXPECT_NEAR(binary_entropy(x), binary_entropy(1 - x), 1e-12);
    EXPECT_GE(binary_entropy(t * x + (1 - t) * y) + 1e-12,
              t * binary_entropy(x) + (1 - t) * binary_entropy(y));
  }
}

TEST(BinaryEntropy, SubAdditiveShift) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double eps = 0.5 * u(rng);
    if (x + eps <= 1) EXPECT_LE(std::abs(binary_entropy(x + eps) - binary_entropy(x)), binary_entropy(eps) + 1e-12);
    if (x - eps >= 0) EXPECT_LE(std::abs(binary_entropy(x - eps) - binary_entropy(x)), binary_entropy(eps) + 1e-12);
  }
}

TEST(Entropy, Examples) {
  const std::vector<Rational> a{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  EXPECT_DOUBLE_EQ(entropy(a, 2), 1.5);
  const std::vector<Rational> dirac{Rational(1), Rational(0), Rational(0)};
  EXPECT_EQ(entropy(dirac, 2), 0.0);
  const std::vector<Rational> third(3, Rational(1, 3));
  EXPECT_NEAR(entropy(third, 2), std::log2(3.0), 1e-12);
  EXPECT_NEAR(entropy(third, 3), 1.0, 1e-12);
}

TEST(Entropy, RejectsBadSum) {
  const std::vector<Rational> bad{Rational(1, 2), Rational(1, 4)};
  EXPECT_THROW(entropy(bad, 2), DomainError);
}

TEST(Multinomial, Examples) {
  EXPECT_EQ(multinomial(3, {1, 1, 1}), 6);
  EXPECT_EQ(multinomial(4, {4}), 1);
  EXPECT_EQ(multinomial(5, {1, 1, 3}), 20);
  EXPECT_THROW(multinomial(5, {1, 1}), DomainError);
}

TEST(Multinomial, MatchesPascal) {
  std::vector<std::vector<BigInt>> pascal(41);
  for (unsigned n = 0; n <= 40; ++n) {
    pascal[n].assign(n + 1, BigInt(1));
    for (unsigned k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(multinomial(n, {k, n - k}), pascal[n][k]);
      EXPECT_EQ(binomial(n, k), pascal[n][k]);
    }
  }
}

TEST(Multinomial, BinomialEntropySandwich) {
  for (unsigned n = 1; n <= 200; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const double lam = static_cast<double>(k) / n;
      const double hn = binary_entropy(lam) * n;
      const double lg = log2_bigint(binomial(n, k));
      EXPECT_LE(lg, hn + 1e-9);
      EXPECT_GE(lg, hn - std::log2(4.0 * std::sqrt(static_cast<double>(n))) - 1e-9);
    }
  }
}

TEST(FD, Examples) {
  EXPECT_NEAR(f_d(2, 0.2), -std::log2(1.25), 1e-12);
  EXPECT_NEAR(f_d(2, 0.25), -0.311278, 1e-6);
  const double r = std::pow(3.0, 1.5);
  EXPECT_NEAR(f_d(3, 1 / (r - 1 + 3)), std::log2(r / (r + 2)), 1e-9);
  EXPECT_THROW(f_d(3, 0.5), DomainError);
  EXPECT_THROW(f_d(2, 0.0), DomainError);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("5/4"), Rational(5, 4));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("3e-2"), Rational(3, 100));
  EXPECT_EQ(to_string(Rational(6, 8)), "3/4");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(exact_from_double(0.375), Rational(3, 8));
}

TEST(PowerProb, Values) {
  EXPECT_EQ(PowerProb::of(3, 2).value(), Rational(1, 9));
  EXPECT_EQ(PowerProb::zero(2).value(), Rational(0));
  EXPECT_TRUE(PowerProb::zero(2).is_zero());
  EXPECT_EQ(inverse_power(2, 10), Rational(1, 1024));
  EXPECT_EQ(ipow(3, 4), 81);
}

TEST(Log2, LargeValues) {
  const BigInt big = ipow(2, 3000) * 3;
  EXPECT_NEAR(log2_bigint(big), 3000 + std::log2(3.0), 1e-9);
  EXPECT_NEAR(log2_rational(Rational(1, ipow(2, 2000))), -2000.0, 1e-9);
}
