#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsplit/errors.hpp"
#include "qsplit/gbeta.hpp"
#include "qsplit/numerics.hpp"

using namespace qsplit;

namespace {

const double kLog125 = std::log2(1.25);

RealAmount amount(int b, double beta, std::vector<double> c) {
  RealAmount a;
  a.b = b;
  a.beta = beta;
  a.c = std::move(c);
  return a;
}

// Coarse grid maximum of P over alpha for two positive blocks, solving the constraint for alpha_1.
double grid_max_two(const RealAmount& c, int steps) {
  double best = -1e9;
  for (int i = 0; i <= steps; ++i) {
    const double a0 = static_cast<double>(i) / steps;
    const double a1 = (c.target() - a0 * c.c[0]) * 2 / c.c[1];
    if (a1 < 0 || a1 > 1) continue;
    best = std::max(best, payoff_P(c.c, {a0, a1}));
  }
  return best;
}

}  // namespace

TEST(Payoff, Examples) {
  EXPECT_NEAR(payoff_P({0.4}, {0.5}), -kLog125, 1e-9);
  EXPECT_NEAR(payoff_P({1.0}, {0.5}), 0.0, 1e-12);
  EXPECT_NEAR(payoff_P({0.3, 0.2}, {0.5, 0.5}), -0.311278, 1e-6);
  EXPECT_NEAR(feasibility_residual(amount(1, 1.25, {0.4}), {0.5}), 0.0, 1e-12);
}

TEST(InnerMax, SingleBlockForcesHalf) {
  for (double beta : {1.1, 1.25, 1.5, 1.9}) {
    for (int b : {0, 1, 2}) {
      const double c0 = 1 / (std::ldexp(1.0, b) * beta);
      const auto r = inner_max(amount(b, beta, {c0}));
      ASSERT_EQ(r.alpha.size(), 1u);
      EXPECT_NEAR(r.alpha[0], 0.5, 1e-9);
      EXPECT_NEAR(r.value, c0 - binary_entropy(c0 / 2), 1e-9);
      EXPECT_TRUE(r.certified);
    }
  }
}

TEST(InnerMax, TwoBlockOptimum) {
  const auto r = inner_max(amount(1, 1.80941, {0.138165, 0.276335}));
  EXPECT_NEAR(r.value, -0.305758, 1e-5);
  EXPECT_TRUE(r.certified);
  EXPECT_NEAR(feasibility_residual(amount(1, 1.80941, {0.138165, 0.276335}), r.alpha), 0.0, 1e-9);
}

TEST(InnerMax, DominatesUniformAndGrid) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const double beta = 1 + u(rng);
    const double c0 = u(rng) * 0.5;
    const double c1 = 2 * (1 / (2 * beta) - c0);  // b = 1
    if (c1 <= 0.01 || c0 <= 0.01 || c0 + c1 > 1) continue;
    const auto c = amount(1, beta, {c0, c1});
    const auto r = inner_max(c);
    EXPECT_GE(r.value + 1e-12, payoff_P(c.c, {0.5, 0.5}));
    EXPECT_GE(r.value + 1e-9, grid_max_two(c, 4000));
    EXPECT_NEAR(feasibility_residual(c, r.alpha), 0.0, 1e-9);
    ++checked;
  }
}

TEST(Bounds, UniformLower) {
  const auto r = g_lb_uniform();
  EXPECT_NEAR(r.value, -kLog125, 1e-7);
  EXPECT_NEAR(r.params.at("x"), 0.4, 1e-6);
  EXPECT_EQ(r.method, BoundMethod::uniform_alpha);
}

TEST(Bounds, SingleBlock) {
  EXPECT_NEAR(g_ub_single_block(1.25, 1).value, -kLog125, 1e-6);
  EXPECT_NEAR(g_ub_single_block(1.7, 1).value, -0.3083, 5e-4);
  EXPECT_NEAR(g_ub_single_block(1.95, 0).value, -0.30846, 5e-4);
  EXPECT_THROW(g_ub_single_block(2.5, 1), DomainError);
}

TEST(TwoBlock, Optimum) {
  const auto s = two_block_solve(1.80941, 0.4145);
  EXPECT_NEAR(s.value, -0.305758, 1e-5);
  EXPECT_TRUE(s.is_interior_max);
  for (double res : s.residuals) EXPECT_NEAR(res, 0.0, 1e-8);
  // Frozen from a 200000-point grid over alpha_0 with alpha_1 solved from the constraint.
  const double at175 = two_block_solve(1.75, 0.4145).value;
  EXPECT_NEAR(at175, -0.305910, 1e-5);
  EXPECT_NEAR(at175, g_ub_single_block(1.75, 1).value, 1e-3);
  EXPECT_THROW(two_block_solve(1.8, 1 / 1.8), DomainError);
}

TEST(Scan, ValueAndLocation) {
  const auto r = scan_1236();
  EXPECT_NEAR(r.value, -0.305758, 1e-5);
  EXPECT_NEAR(r.params.at("beta_at_max"), 1.80941, 0.01);
  EXPECT_GT(std::exp2(-r.value), 1.236);
  const auto fine = scan_1236(kScanS, 5e-4);
  EXPECT_LT(std::abs(fine.value - r.value), 1e-6);
}

TEST(Curves, Rows) {
  const auto rows = curves(1.25, 1.25, 0.01);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].single_b1, -kLog125, 1e-6);
  const auto at = curves(1.80941, 1.80941, 0.01);
  EXPECT_NEAR(at[0].two_block, -0.305758, 1e-5);
  double worst = 1e9;
  for (const auto& row : curves(1.0, 1.99, 0.01)) worst = std::min(worst, std::max(row.single_b0, row.single_b1));
  EXPECT_LE(worst, -0.30);
}

TEST(SIndices, Examples) {
  EXPECT_EQ(find_s_indices(amount(1, 1.25, {0.4}), {0.5}), (std::pair<int, int>{0, 0}));
  EXPECT_EQ(find_s_indices(amount(0, 1.25, {0.6, 0.4}), {1.0 / 3, 1.0}), (std::pair<int, int>{0, 0}));
}

TEST(Perturbation, Preconditions) {
  EXPECT_THROW(perturbation_gain(amount(1, 1.25, {0.4})), DomainError);
  EXPECT_THROW(perturbation_gain(amount(1, 1.8, {0.4})), DomainError);
}

TEST(Perturbation, FarBranchSingleBlock) {
  const auto c = amount(1, 1.8, {1 / 3.6});
  const auto cert = perturbation_gain(c);
  EXPECT_TRUE(cert.far_branch);
  EXPECT_GT(cert.gain, 0.0);
  EXPECT_NEAR(feasibility_residual(c, cert.alpha), 0.0, 1e-9);
}

TEST(Perturbation, NearBranchGains) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  int strict = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const double beta = 1.5;
    const double sum = 0.4 + u(rng);
    // c0 + c1/2 = 1/(2 beta) and c0 + c1 = sum.
    const double c1 = 2 * (sum - 1 / (2 * beta));
    const double c0 = sum - c1;
    const auto c = amount(1, beta, {c0, c1});
    const auto cert = perturbation_gain(c);
    EXPECT_NEAR(feasibility_residual(c, cert.alpha), 0.0, 1e-9);
    EXPECT_GE(cert.value + 1e-12, cert.uniform_value);
    EXPECT_NEAR(cert.gain, cert.value + kLog125, 1e-12);
    if (cert.value > cert.uniform_value + 1e-12) ++strict;
  }
  EXPECT_GT(strict, 0);
}

TEST(EmpiricalG, Values) {
  auto recs = empirical_G(Rational(5, 4), {2});
  ASSERT_FALSE(recs.empty());
  EXPECT_NEAR(recs[0].value, std::log2(0.2) / 5, 1e-12);
  EXPECT_EQ(recs[0].method, BoundMethod::empirical);
  recs = empirical_G(Rational(3, 2), {1});
  EXPECT_NEAR(recs[0].value, std::log2(1.0 / 3) / 3, 1e-12);
  EXPECT_NEAR(recs[0].value, -0.5283, 1e-4);
}
