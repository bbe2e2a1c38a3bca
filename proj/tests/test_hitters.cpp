#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qsplit/errors.hpp"
#include "qsplit/hitters.hpp"
#include "qsplit/splitting.hpp"

using namespace qsplit;

TEST(AllQuestions, CountsAreStirlingNumbers) {
  EXPECT_EQ(all_questions(4, 2).size(), 7u);
  EXPECT_EQ(all_questions(5, 2).size(), 15u);
  EXPECT_EQ(all_questions(4, 3).size(), 6u);
  EXPECT_EQ(all_questions(5, 3).size(), 25u);
  for (const auto& q : all_questions(5, 3)) EXPECT_NO_THROW(q.validate(5));
}

TEST(ExactHitter, Examples) {
  EXPECT_EQ(exact_min_hitter(2, 2).size, 1u);
  EXPECT_EQ(exact_min_hitter(3, 2).size, 3u);
  EXPECT_EQ(exact_min_hitter(3, 3).size, 1u);
  EXPECT_EQ(exact_min_hitter(4, 2).size, 5u);
  EXPECT_EQ(exact_min_hitter(4, 3).size, 2u);
}

TEST(ExactHitter, ResultIsOptimalAndSandwiched) {
  for (int n = 3; n <= 5; ++n) {
    const auto h = exact_min_hitter(n, 2);
    EXPECT_TRUE(is_optimal_question_set(h.questions, n, 2).optimal);
    const auto rho = rho_min(n).rho;
    EXPECT_GE(Rational(h.size), 1 / rho);
  }
}

TEST(Halving, SizesAndOptimality) {
  for (int n = 3; n <= 6; ++n) {
    const auto h = halving_baseline(n);
    const int half = n / 2;
    EXPECT_EQ(h.size, static_cast<std::size_t>((1 << half) + (1 << (n - half)) - 3)) << n;
    if (n <= kVerifyCap) {
      EXPECT_TRUE(h.checked);
      EXPECT_TRUE(h.verified);
    }
  }
  const auto h3 = halving_baseline(3);
  ASSERT_EQ(h3.size, 3u);
}

TEST(Greedy, ExamplesAndNeverBelowExact) {
  EXPECT_EQ(greedy_hitter(2, 2).size, 1u);
  EXPECT_EQ(greedy_hitter(3, 2).size, 3u);
  for (int n = 3; n <= 5; ++n) {
    const auto g = greedy_hitter(n, 2);
    EXPECT_GE(g.size, exact_min_hitter(n, 2).size);
    EXPECT_TRUE(is_optimal_question_set(g.questions, n, 2).optimal);
  }
}

TEST(Randomized, VerifiesAtFullMultiplier) {
  int verified = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto h = randomized_hitter(5, 2, seed, 1.0);
    EXPECT_TRUE(h.checked);
    verified += h.verified ? 1 : 0;
    const double bound = 2 * std::pow(5.0, 4) * std::log(5.0) * 5;  // 2 n^(2d) ln n / rho_min(5)
    EXPECT_LE(static_cast<double>(h.size), bound);
  }
  EXPECT_GE(verified, 19);
}

TEST(Randomized, DeterministicPerSeed) {
  const auto a = randomized_hitter(4, 2, 9, 1.0, false);
  const auto b = randomized_hitter(4, 2, 9, 1.0, false);
  EXPECT_EQ(a.questions, b.questions);
  EXPECT_EQ(a.seed, std::optional<std::uint64_t>(9));
}

TEST(Randomized, UndersamplingFails) {
  int failed = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    failed += randomized_hitter(4, 2, seed, 0.05).verified ? 0 : 1;
  }
  EXPECT_GE(failed, 10);
}

TEST(HitterMethod, Names) {
  for (auto m : {HitterMethod::exact, HitterMethod::random, HitterMethod::halving, HitterMethod::greedy}) {
    EXPECT_EQ(parse_hitter_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_hitter_method("bogus"), DomainError);
}
