#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/errors.hpp"

using namespace qsplit;

namespace {

DAdicDistribution dist(int d, std::vector<int> e) { return DAdicDistribution::from_exponents(d, std::move(e)); }

AmountSequence seq(int b, Rational beta, std::vector<Rational> c) {
  AmountSequence s;
  s.b = b;
  s.beta = beta;
  s.c = std::move(c);
  return s;
}

Rational mass(const DAdicDistribution& mu, const std::vector<int>& idx) {
  Rational m = 0;
  for (int i : idx) m += mu.probability(i);
  return m;
}

// Exhaustive generalized tail: every (T, a) meeting the predicate, ordered by the documented preference.
TailReport brute_generalized_tail(const DAdicDistribution& mu) {
  const int n = static_cast<int>(mu.size());
  bool found = false;
  TailReport best;
  for (int a = 1; a <= n + 1; ++a) {
    const Rational target = inverse_power(mu.d, a);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> T;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        const bool in = mask >> i & 1;
        if (in) {
          if (mu.is_zero(i)) ok = false;
          T.push_back(i);
        } else if (!mu.is_zero(i) && mu.probability(i) < target) {
          ok = false;
        }
      }
      if (!ok || mass(mu, T) != target) continue;
      auto better = [&] {
        if (!found) return true;
        if (T.size() != best.indices.size()) return T.size() > best.indices.size();
        if (a != best.a) return a > best.a;
        // smallest indicator vector: the set containing the earliest differing index loses
        for (int i = 0; i < n; ++i) {
          const bool x = std::count(T.begin(), T.end(), i) > 0;
          const bool y = std::count(best.indices.begin(), best.indices.end(), i) > 0;
          if (x != y) return !x;
        }
        return false;
      };
      if (better()) {
        found = true;
        best.indices = T;
        best.a = a;
        best.total = target;
      }
    }
  }
  if (!found) throw DomainError("no tail");
  return best;
}

}  // namespace

TEST(Distribution, ValidatesSum) {
  EXPECT_THROW(dist(2, {1, 1, 1}), DomainError);
  EXPECT_NO_THROW(dist(2, {1, 2, 2}));
  EXPECT_NO_THROW(dist(2, {1, 1, DAdicDistribution::kZero}));
}

TEST(Enumerate, SmallExamples) {
  EnumerationFilter f;
  auto three = enumerate_dadic_list(3, 2, f);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0].exponents, (std::vector<int>{1, 2, 2}));
  EXPECT_TRUE(enumerate_dadic_list(2, 2, f).empty());
  auto five = enumerate_dadic_list(5, 3, f);
  EXPECT_NE(std::find_if(five.begin(), five.end(),
                         [](const auto& m) { return m.exponents == std::vector<int>{1, 1, 2, 2, 2}; }),
            five.end());
}

TEST(Enumerate, SumsToOneAndUnique) {
  for (int d : {2, 3}) {
    for (int n = 2; n <= 7; ++n) {
      EnumerationFilter f;
      f.canonical = false;
      f.full_support = false;
      auto all = enumerate_dadic_list(n, d, f);
      for (const auto& mu : all) {
        Rational s = 0;
        for (const auto& p : mu.probabilities()) s += p;
        EXPECT_EQ(s, 1);
      }
      auto sorted = all;
      std::sort(sorted.begin(), sorted.end(), labeled_less);
      EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
      EXPECT_EQ(BigInt(all.size()), count_enumerated(n, d, f));
    }
  }
}

TEST(Enumerate, CanonicalCountsFrozenAndBelowNn) {
  // Canonical full-support non-constant counts for n = 1..10, frozen from an exhaustive
  // search over nondecreasing exponent tuples.
  const std::vector<long> d2{0, 0, 1, 1, 3, 5, 9, 15, 28, 50};
  const std::vector<long> d3{0, 0, 0, 0, 1, 0, 2, 0, 3, 0};
  for (int n = 1; n <= 10; ++n) {
    EnumerationFilter f;
    const auto c2 = count_enumerated(n, 2, f);
    const auto c3 = count_enumerated(n, 3, f);
    EXPECT_EQ(c2, d2[n - 1]) << "d=2 n=" << n;
    EXPECT_EQ(c3, d3[n - 1]) << "d=3 n=" << n;
    EXPECT_LE(c2, ipow(n, n));
    EXPECT_LE(c3, ipow(n, n));
  }
}

// Tail mass is 2^-a, so a pair of halves gives a = 1.
TEST(Tail, Examples) {
  auto t = tail(dist(2, {2, 2, 2, 3, 4, 4}));
  EXPECT_EQ(t.indices, (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(t.a, 2);
  t = tail(dist(2, {1, 1}));
  EXPECT_EQ(t.indices, (std::vector<int>{1}));
  EXPECT_EQ(t.a, 1);
  t = tail(dist(2, {1, 2, 3, 4, 4}));
  EXPECT_EQ(t.indices, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(t.a, 1);
  EXPECT_EQ(t.total, Rational(1, 2));
  EXPECT_THROW(tail(dist(2, {0})), DomainError);
}

TEST(GeneralizedTail, Examples) {
  auto t = generalized_tail(dist(3, {1, 1, 2, 2, 2}));
  EXPECT_EQ(t.indices, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(t.a, 1);
  t = generalized_tail(dist(2, {1, 2, 3, 3}));
  EXPECT_EQ(t.indices, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(t.a, 1);
  t = generalized_tail(dist(2, {1, 1}));
  EXPECT_EQ(t.indices, (std::vector<int>{1}));
  EXPECT_EQ(t.a, 1);
}

TEST(GeneralizedTail, MatchesExhaustiveSearch) {
  for (int d : {2, 3}) {
    for (int n = 2; n <= 7; ++n) {
      EnumerationFilter f;
      for (const auto& mu : enumerate_dadic_list(n, d, f)) {
        const auto got = generalized_tail(mu);
        const auto want = brute_generalized_tail(mu);
        EXPECT_EQ(got.indices, want.indices) << describe(mu);
        EXPECT_EQ(got.a, want.a) << describe(mu);
        EXPECT_EQ(mass(mu, got.indices), inverse_power(d, got.a));
      }
    }
  }
}

TEST(Tail, SatisfiesPredicate) {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& mu : enumerate_dadic_list(n, 2, EnumerationFilter{})) {
      const auto t = tail(mu);
      const int m = static_cast<int>(t.indices.size());
      for (int j = 0; j < m; ++j) {
        const int e = j + 1 < m ? t.a + j + 1 : t.a + m - 1;
        EXPECT_EQ(mu.exponents[t.indices[j]], e) << describe(mu);
      }
      for (int i = 0; i < n; ++i) {
        if (std::count(t.indices.begin(), t.indices.end(), i) == 0) EXPECT_LE(mu.exponents[i], t.a);
      }
    }
  }
}

TEST(AmountSequence, Feasibility) {
  EXPECT_TRUE(is_k_feasible(seq(1, Rational(5, 4), {Rational(2, 5)}), 2));
  EXPECT_FALSE(is_k_feasible(seq(1, Rational(5, 4), {Rational(1, 3)}), 2));
  EXPECT_TRUE(is_k_feasible(seq(1, Rational(5, 4), {Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(2, 5)}), 2));
}

TEST(AmountSequence, FromSequenceExamples) {
  auto mu = from_amount_sequence(seq(1, Rational(5, 4), {Rational(2, 5)}), 2);
  EXPECT_EQ(mu.exponents, (std::vector<int>{1, 2, 3, 4, 4}));
  mu = from_amount_sequence(seq(0, Rational(1), {Rational(1)}), 3);
  EXPECT_EQ(mu.exponents, std::vector<int>(8, 3));
  mu = from_amount_sequence(seq(1, Rational(5, 4), {Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(2, 5)}), 2);
  EXPECT_EQ(mu.exponents, (std::vector<int>{1, 2, 3, 4, 4}));
  EXPECT_THROW(from_amount_sequence(seq(1, Rational(5, 4), {Rational(1, 3)}), 2), DomainError);
}

// The maximal tail is contracted to a single element of mass 2^-a before counting classes.
TEST(AmountSequence, ToSequenceExamples) {
  auto s = to_amount_sequence(dist(2, {1, 2, 3, 4, 4}), 2);
  EXPECT_EQ(s.b, 1);
  EXPECT_EQ(s.beta, Rational(5, 4));
  EXPECT_EQ(s.c, (std::vector<Rational>{Rational(2, 5)}));
  s = to_amount_sequence(dist(2, {1, 2, 2}), 1);
  EXPECT_EQ(s.b, 0);
  EXPECT_EQ(s.beta, Rational(3, 2));
  EXPECT_EQ(s.c, (std::vector<Rational>{Rational(2, 3)}));
  EXPECT_THROW(to_amount_sequence(dist(2, {2, 2, 2, 2}), 2), DomainError);
}

TEST(AmountSequence, RoundTrip) {
  for (int n = 3; n <= 10; ++n) {
    const auto [beta, k] = split_size(n);
    for (const auto& mu : enumerate_dadic_list(n, 2, EnumerationFilter{})) {
      const auto s = to_amount_sequence(mu, k);
      EXPECT_EQ(s.beta, beta);
      EXPECT_NO_THROW(s.validate());
      EXPECT_TRUE(is_k_feasible(s, k));
      EXPECT_EQ(from_amount_sequence(s, k), mu) << describe(mu);
    }
  }
}

TEST(PrefixSplit, Examples) {
  std::vector<int> a{1, 2, 3, 3};
  EXPECT_EQ(prefix_split(2, a, 1), 1u);
  auto iv = prefix_intervals(2, a, 1);
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_EQ(iv[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(iv[1], (std::pair<std::size_t, std::size_t>{1, 4}));
  std::vector<int> b{1, 1, 2, 2, 2};
  iv = prefix_intervals(3, b, 1);
  ASSERT_EQ(iv.size(), 3u);
  EXPECT_EQ(iv[2], (std::pair<std::size_t, std::size_t>{2, 5}));
  std::vector<int> c{2, 2, 3, 3, 3, 3};
  EXPECT_EQ(prefix_split(2, c, 1), 2u);
}

TEST(PrefixSplit, ExactPrefixMass) {
  for (int d : {2, 3}) {
    for (int n = 2; n <= 8; ++n) {
      for (const auto& mu : enumerate_dadic_list(n, d, EnumerationFilter{})) {
        const int e1 = mu.exponents.front();
        for (int a = 1; a <= e1; ++a) {
          const auto m = prefix_split(d, mu.exponents, a);
          Rational s = 0;
          for (std::size_t i = 0; i < m; ++i) s += mu.probability(i);
          EXPECT_EQ(s, inverse_power(d, a));
        }
      }
    }
  }
}
