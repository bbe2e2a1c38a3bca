#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qsplit/dary_bounds.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/splitting.hpp"

using namespace qsplit;

TEST(MagicConstant, Values) {
  EXPECT_EQ(magic_constant(2), 1.25);
  EXPECT_NEAR(magic_constant(3), 1 + 2 / std::pow(3.0, 1.5), 1e-12);
  EXPECT_NEAR(magic_constant(3), 1.384900, 1e-5);
  for (int d = 4; d <= 64; ++d) {
    const double gap = 2 - magic_constant(d);
    const double scale = std::log2(static_cast<double>(d)) / d;
    EXPECT_GE(gap, 0.3 * scale) << d;
    EXPECT_LE(gap, 3 * scale) << d;
  }
}

TEST(OptimalBeta, Values) {
  EXPECT_NEAR(optimal_beta(2), 0.2, 1e-15);
  EXPECT_NEAR(optimal_beta(3), 1 / (std::pow(3.0, 1.5) + 2), 1e-12);
  EXPECT_NEAR(optimal_beta(3), 0.138963, 1e-6);
  for (int d = 2; d <= 32; ++d) {
    EXPECT_GE(optimal_beta(d), 1.0 / (d * d + 1));
    EXPECT_LE(optimal_beta(d), 1.0 / d);
  }
}

TEST(FOpt, MatchesGridMinimum) {
  EXPECT_NEAR(f_opt(2), -std::log2(1.25), 1e-9);
  const double r = std::pow(3.0, 1.5);
  EXPECT_NEAR(f_opt(3), std::log2(r / (r + 2)), 1e-9);
  for (int d = 2; d <= 10; ++d) {
    double best = 1e9;
    const double top = 1.0 / (d - 1);
    for (int i = 1; i < 200000; ++i) best = std::min(best, f_d(d, top * i / 200000));
    EXPECT_NEAR(f_opt(d), best, 1e-6) << d;
    EXPECT_NEAR(f_d(d, optimal_beta(d)), f_opt(d), 1e-12);
    EXPECT_NEAR(dary_report(d).two_minus_mc, 2 - magic_constant(d), 1e-15);
  }
}

TEST(HardDistribution, Binary) {
  auto h = hard_distribution(2, 3);
  EXPECT_EQ(h.n, 20);
  EXPECT_EQ(h.head, 7);
  EXPECT_EQ(h.tail, 13);
  h = hard_distribution(2, 1);
  EXPECT_EQ(h.n, 5);
  EXPECT_EQ(h.mu.exponents, (std::vector<int>{1, 2, 3, 4, 4}));
}

TEST(HardDistribution, Ternary) {
  const auto h = hard_distribution(3, 2);
  EXPECT_EQ(h.n, static_cast<int>(h.mu.size()));
  EXPECT_EQ(h.n % 2, 1);
  EXPECT_LE(h.n, 21);
  Rational s = 0;
  for (const auto& p : h.mu.probabilities()) s += p;
  EXPECT_EQ(s, 1);
  EXPECT_EQ(h.head + h.tail, h.n);
  const auto t = generalized_tail(h.mu);
  Rational tail_mass = 0;
  for (int i : t.indices) tail_mass += h.mu.probability(i);
  EXPECT_EQ(tail_mass, inverse_power(3, h.a));
}

TEST(HardDistribution, StructureAcrossParameters) {
  for (int d = 2; d <= 4; ++d) {
    for (int a = 1; a <= 4; ++a) {
      const auto h = hard_distribution(d, a);
      EXPECT_EQ(h.n % (d - 1), 1 % (d - 1));
      EXPECT_EQ(h.head, static_cast<int>(ipow(d, a)) - 1);
      EXPECT_EQ(h.beta_prime, Rational(ipow(d, a), d * h.n));
      int at_a = 0;
      for (int e : h.mu.exponents) at_a += e == a ? 1 : 0;
      EXPECT_EQ(at_a, h.head);
    }
  }
}

TEST(Reduction, Sandwich) {
  auto r = verify_reduction(3, 2);
  EXPECT_EQ(r.q, 3u);
  EXPECT_EQ(r.rho, Rational(1, 3));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(static_cast<double>(r.q), r.lower);
  EXPECT_LE(static_cast<double>(r.q), r.upper);
  r = verify_reduction(4, 3);
  EXPECT_TRUE(r.holds);
  r = verify_reduction(5, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.q, 9u);
}
