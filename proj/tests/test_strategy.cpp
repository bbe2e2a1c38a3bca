#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qsplit/errors.hpp"
#include "qsplit/oracles.hpp"
#include "qsplit/strategy.hpp"

using namespace qsplit;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> v) { return v; }

QuestionSet singletons(int n, std::initializer_list<int> which) {
  QuestionSet q;
  for (int i : which) q.push_back(Question::binary(n, {i}));
  return q;
}

QuestionSet all_subsets(int n) {
  QuestionSet q;
  for (std::uint32_t m = 1; m + 1 < (1u << n); ++m) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) if (m >> i & 1) s.push_back(i);
    q.push_back(Question::binary(n, s));
  }
  return q;
}

}  // namespace

TEST(Huffman, Examples) {
  auto r = huffman(R({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), 2);
  EXPECT_EQ(r.cost, Rational(3, 2));
  EXPECT_EQ(r.depths, (std::vector<int>{1, 2, 2}));
  r = huffman(R({Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)}), 2);
  EXPECT_EQ(r.cost, Rational(19, 10));
  EXPECT_EQ(r.depths, (std::vector<int>{1, 2, 3, 3}));
  r = huffman(R({Rational(1, 3), Rational(1, 3), Rational(1, 9), Rational(1, 9), Rational(1, 9)}), 3);
  EXPECT_EQ(r.cost, Rational(4, 3));  // base-3 entropy 2/3 + 2/3
  EXPECT_EQ(r.depths, (std::vector<int>{1, 1, 2, 2, 2}));
}

TEST(Huffman, OptCostExamples) {
  EXPECT_EQ(opt_cost(R({Rational(1, 2), Rational(1, 2)}), 2), 1);
  EXPECT_EQ(opt_cost(R({Rational(9, 10), Rational(1, 10)}), 2), 1);
  EXPECT_EQ(opt_cost(R({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(1, 16)}), 2),
            Rational(15, 8));
  EXPECT_THROW(opt_cost(R({Rational(1, 2), Rational(1, 3)}), 2), DomainError);
}

TEST(Huffman, MatchesKraftOracle) {
  std::mt19937_64 rng(21);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 60; ++rep) {
      const int n = 2 + rep % 6;
      const auto pi = oracle::random_distribution(n, rng);
      const auto r = huffman(pi, d);
      EXPECT_EQ(r.cost, oracle::brute_code_cost(pi, d));
      Rational from_depths = 0;
      for (int i = 0; i < n; ++i) from_depths += pi[i] * r.depths[i];
      EXPECT_EQ(from_depths, r.cost);
    }
  }
}

TEST(Huffman, DadicCostEqualsEntropy) {
  for (int d : {2, 3}) {
    for (int n = 2; n <= 7; ++n) {
      for (const auto& mu : enumerate_dadic_list(n, d, EnumerationFilter{})) {
        EXPECT_EQ(opt_cost(mu.probabilities(), d), oracle::dadic_entropy(mu)) << describe(mu);
      }
    }
  }
}

TEST(RestrictedCost, Examples) {
  const auto q = singletons(3, {0, 1});
  EXPECT_EQ(restricted_opt_cost(R({Rational(1, 4), Rational(1, 4), Rational(1, 2)}), q, 2).cost, Rational(7, 4));
  EXPECT_EQ(restricted_opt_cost(R({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), q, 2).cost, Rational(3, 2));
}

TEST(RestrictedCost, FullSetReachesHuffman) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const auto q = all_subsets(n);
    for (int rep = 0; rep < 10; ++rep) {
      const auto pi = oracle::random_distribution(n, rng);
      EXPECT_EQ(restricted_opt_cost(pi, q, 2).cost, opt_cost(pi, 2));
    }
  }
}

TEST(RestrictedCost, NeverBelowHuffman) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 3 + rep % 3;
    const auto q = singletons(n, {0, 1});
    const auto pi = oracle::random_distribution(n, rng);
    try {
      EXPECT_GE(restricted_opt_cost(pi, q, 2).cost, opt_cost(pi, 2));
    } catch (const DomainError&) {
      // singletons {x1},{x2} cannot identify more than three elements
      EXPECT_GT(n, 3);
    }
  }
}

TEST(Question, Validation) {
  Question q;
  q.parts = {{0, 1}, {2}};
  EXPECT_NO_THROW(q.validate(3));
  q.parts = {{0, 1, 2}, {}};
  EXPECT_THROW(q.validate(3), DomainError);
  q.parts = {{0}, {0, 1, 2}};
  EXPECT_THROW(q.validate(3), DomainError);
  EXPECT_EQ(Question::binary(3, {1}).parts, (std::vector<std::vector<int>>{{1}, {0, 2}}));
}

TEST(Optimality, Examples) {
  auto v = is_optimal_question_set(singletons(3, {0, 1, 2}), 3, 2);
  EXPECT_TRUE(v.optimal);
  v = is_optimal_question_set(singletons(3, {0, 1}), 3, 2, true);
  EXPECT_FALSE(v.optimal);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_EQ(v.counterexample->exponents, (std::vector<int>{2, 2, 1}));
  EXPECT_TRUE(v.methods_agree);
  v = is_optimal_question_set(singletons(2, {0}), 2, 2);
  EXPECT_TRUE(v.optimal);
}

TEST(Optimality, HitsAgreesWithOracle) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + rep % 4;
    QuestionSet q;
    std::uniform_int_distribution<std::uint32_t> pick(1, (1u << n) - 2);
    for (int j = 0; j < 3; ++j) {
      const auto m = pick(rng);
      std::vector<int> s;
      for (int i = 0; i < n; ++i) if (m >> i & 1) s.push_back(i);
      q.push_back(Question::binary(n, s));
    }
    const auto mu = oracle::random_dadic(2, n, rng);
    EXPECT_EQ(hits(q, mu), oracle::brute_hits(q, mu));
  }
}
