#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qsplit/limits.hpp"
#include "qsplit/strategy.hpp"

namespace qsplit {

enum class HitterMethod { exact, random, halving, greedy };

std::string to_string(HitterMethod method);
HitterMethod parse_hitter_method(const std::string& name);

struct HitterResult {
  QuestionSet questions;
  std::size_t size = 0;
  bool verified = false;  // the verifier ran and found no counterexample
  bool checked = false;   // the verifier ran at all
  HitterMethod method = HitterMethod::exact;
  std::optional<std::uint64_t> seed;
};

// Every partition of X_n into exactly d nonempty unlabeled blocks, blocks ordered by least element.
QuestionSet all_questions(int n, int d);

// Minimum-cardinality hitter by branch and bound over the question universe.
HitterResult exact_min_hitter(int n, int d, const Limits& limits = default_limits());
// Adds the question hitting the most still-unhit distributions until every one is hit.
HitterResult greedy_hitter(int n, int d, const Limits& limits = default_limits());
// Uniform random partitions of every type, ceil(multiplier * 2n ln n / rho) per type.
HitterResult randomized_hitter(int n, int d, std::uint64_t seed, double multiplier, bool verify = true,
                               const Limits& limits = default_limits());
// All nonempty proper subsets comparable with {x_1, ..., x_floor(n/2)}.
HitterResult halving_baseline(int n, bool verify = true, const Limits& limits = default_limits());

// Largest n for which hitter results are verified automatically.
inline constexpr int kVerifyCap = 7;

}  // namespace qsplit
