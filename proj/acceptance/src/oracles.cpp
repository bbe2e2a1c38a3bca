#include "qsplit/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include "qsplit/errors.hpp"

namespace qsplit::oracle {

namespace {

// Masses as integer multiples of 2^-E where E is the largest exponent.
std::vector<std::uint64_t> dyadic_units(const DAdicDistribution& mu, std::uint64_t& total) {
  if (mu.d != 2) throw DomainError("dyadic input expected");
  const int top = mu.max_exponent();
  if (top > 62) throw DomainError("exponent too large for the brute-force oracle");
  std::vector<std::uint64_t> units(mu.size(), 0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!mu.is_zero(i)) units[i] = std::uint64_t{1} << (top - mu.exponents[i]);
  }
  total = std::uint64_t{1} << top;
  return units;
}

}  // namespace

std::vector<std::uint32_t> brute_splitting_sets(const DAdicDistribution& mu) {
  const int n = static_cast<int>(mu.size());
  if (n > 24) throw DomainError("brute-force oracle limited to n <= 24");
  std::uint64_t total = 0;
  const auto units = dyadic_units(mu, total);
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::uint64_t sum = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) sum += units[i];
    }
    if (2 * sum == total) out.push_back(mask);
  }
  return out;
}

std::map<int, BigInt> brute_splitting_counts(const DAdicDistribution& mu) {
  std::map<int, BigInt> out;
  for (std::uint32_t mask : brute_splitting_sets(mu)) out[std::popcount(mask)] += 1;
  return out;
}

Rational brute_code_cost(const std::vector<Rational>& pi, int d) {
  const int n = static_cast<int>(pi.size());
  if (n <= 1) return Rational(0);
  if (n > 10) throw DomainError("brute-force code oracle limited to n <= 10");
  std::vector<Rational> sorted = pi;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const int depth = n - 1;
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(depth) + 1);
  for (int l = 0; l <= depth; ++l) weight[l] = static_cast<std::uint64_t>(std::pow(d, depth - l) + 0.5);
  const std::uint64_t budget = weight[0];

  Rational best = -1;
  std::vector<int> lengths(static_cast<std::size_t>(n));
  // Nonincreasing masses take nondecreasing lengths in some optimal code.
  std::function<void(int, int, std::uint64_t)> walk = [&](int i, int lo, std::uint64_t used) {
    if (i == n) {
      Rational cost = 0;
      for (int j = 0; j < n; ++j) cost += sorted[j] * lengths[j];
      if (best < 0 || cost < best) best = cost;
      return;
    }
    for (int l = lo; l <= depth; ++l) {
      // Every later length is at most depth, so each needs at least weight[depth].
      if (used + weight[l] + (n - i - 1) * weight[depth] > budget) continue;
      lengths[i] = l;
      walk(i + 1, l, used + weight[l]);
    }
  };
  walk(0, 1, 0);
  return best;
}

Rational dadic_entropy(const DAdicDistribution& mu) {
  Rational h = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!mu.is_zero(i)) h += mu.probability(i) * mu.exponents[i];
  }
  return h;
}

bool brute_hits(const QuestionSet& Q, const DAdicDistribution& mu) {
  const Rational part(1, mu.d);
  for (const auto& q : Q) {
    if (static_cast<int>(q.parts.size()) != mu.d) continue;
    bool all = true;
    for (const auto& p : q.parts) {
      Rational mass = 0;
      for (int x : p) mass += mu.probability(static_cast<std::size_t>(x));
      if (mass != part) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

DAdicDistribution random_dadic(int d, int n, std::mt19937_64& rng) {
  std::vector<int> exps{0};
  while (static_cast<int>(exps.size()) < n) {
    std::uniform_int_distribution<std::size_t> pick(0, exps.size() - 1);
    const std::size_t i = pick(rng);
    const int e = exps[i] + 1;
    exps[i] = e;
    exps.insert(exps.end(), static_cast<std::size_t>(d - 1), e);
  }
  std::shuffle(exps.begin(), exps.end(), rng);
  return DAdicDistribution::from_exponents(d, std::move(exps));
}

std::vector<Rational> random_distribution(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 20);
  std::vector<int> weights(static_cast<std::size_t>(n));
  for (int& x : weights) x = w(rng);
  const int total = std::accumulate(weights.begin(), weights.end(), 0);
  std::vector<Rational> out;
  for (int x : weights) out.emplace_back(x, total);
  return out;
}

}  // namespace qsplit::oracle
