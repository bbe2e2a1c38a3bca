#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/limits.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

// An ordered partition of X_n into d parts. Binary questions store {A, complement}.
struct Question {
  std::vector<std::vector<int>> parts;

  static Question binary(int n, std::vector<int> subset);
  std::size_t arity() const { return parts.size(); }
  // Part masks; requires n <= 64.
  std::vector<std::uint64_t> masks() const;
  // Throws DomainError unless the parts are disjoint, cover X_n and none equals X_n.
  void validate(int n) const;

  friend bool operator==(const Question&, const Question&) = default;
};

using QuestionSet = std::vector<Question>;

struct TreeNode {
  int element = -1;  // leaf label; indices >= n are padding leaves
  std::optional<Question> question;
  std::vector<int> children;  // node ids, one per part
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  int root = -1;
};

struct CostReport {
  Rational cost;
  double cost_value = 0.0;
  DecisionTree tree;
  std::vector<int> depths;    // per real element; -1 for elements that never occur
  int padding = 0;            // zero-mass leaves added to complete the d-ary tree
  std::vector<int> tau;       // d-adic exponents of the induced distribution over real + padding leaves
};

// Exact sum check shared by the cost functions.
void require_distribution(const std::vector<Rational>& pi);

// d-ary Huffman; ties merge the smallest masses with the smallest original indices first.
CostReport huffman(const std::vector<Rational>& pi, int d);
Rational opt_cost(const std::vector<Rational>& pi, int d);

// Minimum expected number of questions over trees restricted to Q.
CostReport restricted_opt_cost(const std::vector<Rational>& pi, const QuestionSet& Q, int d,
                               const Limits& limits = default_limits());

struct OptimalityVerdict {
  bool optimal = false;
  std::optional<DAdicDistribution> counterexample;
  std::size_t distributions_checked = 0;
  // Set when the cost-based method was also run.
  std::optional<bool> cost_method_optimal;
  bool methods_agree = true;
};

// True when some question in Q gives every part mass exactly 1/d under mu.
bool hits(const QuestionSet& Q, const DAdicDistribution& mu);

// Checks Q against every labeled non-Dirac d-adic distribution on n elements. With
// cross_check the restricted-cost method is run as well (n <= 6).
OptimalityVerdict is_optimal_question_set(const QuestionSet& Q, int n, int d, bool cross_check = false,
                                          const Limits& limits = default_limits());

}  // namespace qsplit
