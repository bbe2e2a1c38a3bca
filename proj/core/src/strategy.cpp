#include "qsplit/strategy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>

#include "qsplit/errors.hpp"

namespace qsplit {

Question Question::binary(int n, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(subset.begin(), subset.end(), i)) rest.push_back(i);
  }
  return Question{{std::move(subset), std::move(rest)}};
}

std::vector<std::uint64_t> Question::masks() const {
  std::vector<std::uint64_t> out;
  out.reserve(parts.size());
  for (const auto& part : parts) {
    std::uint64_t m = 0;
    for (int i : part) {
      if (i < 0 || i >= 64) throw DomainError("question masks need indices below 64");
      m |= std::uint64_t{1} << i;
    }
    out.push_back(m);
  }
  return out;
}

void Question::validate(int n) const {
  if (parts.size() < 2) throw DomainError("a question needs at least two parts");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& part : parts) {
    if (static_cast<int>(part.size()) == n) throw DomainError("a question part equals X_n");
    for (int i : part) {
      if (i < 0 || i >= n) throw DomainError("question index out of range");
      if (seen[i]++) throw DomainError("question parts overlap");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw DomainError("question parts do not cover X_n");
}

void require_distribution(const std::vector<Rational>& pi) {
  if (pi.empty()) throw DomainError("empty distribution");
  Rational total = 0;
  for (const auto& p : pi) {
    if (p < 0) throw DomainError("negative probability");
    total += p;
  }
  if (total != 1) throw DomainError("probabilities sum to " + to_string(total) + ", not 1");
}

namespace {

void fill_depths(const DecisionTree& tree, int node, int depth, std::vector<int>& depths) {
  const TreeNode& t = tree.nodes[node];
  if (t.children.empty()) {
    if (t.element >= 0) depths[t.element] = depth;
    return;
  }
  for (int child : t.children) fill_depths(tree, child, depth + 1, depths);
}

void collect_leaves(const DecisionTree& tree, int node, int n, std::vector<int>& out) {
  const TreeNode& t = tree.nodes[node];
  if (t.children.empty()) {
    if (t.element >= 0 && t.element < n) out.push_back(t.element);
    return;
  }
  for (int child : t.children) collect_leaves(tree, child, n, out);
}

// Labels every internal node with the question separating its children; elements outside
// the node's subtree go to part 0.
void label_questions(DecisionTree& tree, int n) {
  for (auto& node : tree.nodes) {
    if (node.children.empty()) continue;
    Question q;
    std::vector<int> covered;
    for (int child : node.children) {
      std::vector<int> leaves;
      collect_leaves(tree, child, n, leaves);
      covered.insert(covered.end(), leaves.begin(), leaves.end());
      q.parts.push_back(std::move(leaves));
    }
    std::sort(covered.begin(), covered.end());
    for (int i = 0; i < n; ++i) {
      if (!std::binary_search(covered.begin(), covered.end(), i)) q.parts[0].push_back(i);
    }
    for (auto& part : q.parts) std::sort(part.begin(), part.end());
    node.question = std::move(q);
  }
}

}  // namespace

CostReport huffman(const std::vector<Rational>& pi, int d) {
  if (d < 2) throw DomainError("d must be at least 2");
  require_distribution(pi);
  const int n = static_cast<int>(pi.size());
  int padding = 0;
  while ((n + padding - 1) % (d - 1) != 0) ++padding;
  const int leaves = n + padding;

  CostReport report;
  report.padding = padding;
  DecisionTree& tree = report.tree;
  struct Item {
    Rational mass;
    int min_index;
    int node;
  };
  auto later = [](const Item& a, const Item& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.min_index > b.min_index;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  for (int i = 0; i < leaves; ++i) {
    tree.nodes.push_back(TreeNode{i, std::nullopt, {}});
    queue.push(Item{i < n ? pi[i] : Rational(0), i, i});
  }
  while (queue.size() > 1) {
    TreeNode parent;
    Item merged{0, leaves, static_cast<int>(tree.nodes.size())};
    for (int j = 0; j < d; ++j) {
      Item top = queue.top();
      queue.pop();
      parent.children.push_back(top.node);
      merged.mass += top.mass;
      merged.min_index = std::min(merged.min_index, top.min_index);
    }
    tree.nodes.push_back(std::move(parent));
    queue.push(merged);
  }
  tree.root = queue.top().node;
  label_questions(tree, n);

  std::vector<int> all_depths(static_cast<std::size_t>(leaves), 0);
  fill_depths(tree, tree.root, 0, all_depths);
  report.tau = all_depths;
  report.depths.assign(all_depths.begin(), all_depths.begin() + n);
  report.cost = 0;
  for (int i = 0; i < n; ++i) report.cost += pi[i] * report.depths[i];
  report.cost_value = to_double(report.cost);
  return report;
}

Rational opt_cost(const std::vector<Rational>& pi, int d) { return huffman(pi, d).cost; }

CostReport restricted_opt_cost(const std::vector<Rational>& pi, const QuestionSet& Q, int d, const Limits& limits) {
  require_distribution(pi);
  const int n = static_cast<int>(pi.size());
  if (n > 64) throw DomainError("restricted_opt_cost supports n <= 64");
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& q : Q) {
    if (static_cast<int>(q.arity()) != d) throw DomainError("question arity differs from d");
    q.validate(n);
    masks.push_back(q.masks());
  }
  std::uint64_t support = 0;
  int support_size = 0;
  for (int i = 0; i < n; ++i) {
    if (pi[i] > 0) {
      support |= std::uint64_t{1} << i;
      ++support_size;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(support >> i & 1)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!(support >> j & 1)) continue;
      const bool separated = std::any_of(masks.begin(), masks.end(), [&](const auto& parts) {
        return std::any_of(parts.begin(), parts.end(),
                           [&](std::uint64_t m) { return ((m >> i) & 1) != ((m >> j) & 1); });
      });
      if (!separated) {
        throw DomainError("inseparable: no question separates x" + std::to_string(i + 1) + " and x" +
                          std::to_string(j + 1));
      }
    }
  }
  limits.require(std::ldexp(1.0L, support_size), 96, "restricted_opt_cost");

  struct Entry {
    Rational cost;
    int question = -1;
  };
  std::unordered_map<std::uint64_t, Entry> memo;
  auto mass = [&](std::uint64_t s) {
    Rational m = 0;
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) m += pi[i];
    }
    return m;
  };
  // Unnormalized cost: sum over elements in s of pi_i times depth below s.
  std::function<const Entry&(std::uint64_t)> solve = [&](std::uint64_t s) -> const Entry& {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Entry entry;
    if (std::popcount(s) > 1) {
      std::optional<Rational> best;
      for (std::size_t qi = 0; qi < masks.size(); ++qi) {
        int nonempty = 0;
        for (auto m : masks[qi]) nonempty += (s & m) != 0;
        if (nonempty < 2) continue;
        Rational total = 0;
        for (auto m : masks[qi]) {
          if (s & m) total += solve(s & m).cost;
        }
        if (!best || total < *best) {
          best = total;
          entry.question = static_cast<int>(qi);
        }
      }
      if (!best) throw DomainError("inseparable support");
      entry.cost = *best + mass(s);
    }
    return memo.emplace(s, std::move(entry)).first->second;
  };

  CostReport report;
  report.cost = solve(support).cost;
  report.cost_value = to_double(report.cost);
  report.depths.assign(static_cast<std::size_t>(n), -1);

  DecisionTree& tree = report.tree;
  std::function<int(std::uint64_t)> build = [&](std::uint64_t s) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const Entry& e = solve(s);
    if (e.question < 0) {
      tree.nodes[id].element = s == 0 ? -1 : std::countr_zero(s);
      return id;
    }
    tree.nodes[id].question = Q[e.question];
    std::vector<int> children;
    for (auto m : masks[e.question]) {
      if (s & m) {
        children.push_back(build(s & m));
      } else {
        children.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.emplace_back();
      }
    }
    tree.nodes[id].children = std::move(children);
    return id;
  };
  tree.root = build(support);
  fill_depths(tree, tree.root, 0, report.depths);
  return report;
}

namespace {

using u128 = unsigned __int128;

std::vector<u128> units_of(const DAdicDistribution& mu, u128* target) {
  const int e_max = mu.max_exponent();
  if (e_max < 1) throw DomainError("Dirac distributions have no dividing partition");
  if (static_cast<double>(e_max) * std::log2(static_cast<double>(mu.d)) > 120.0) {
    throw DomainError("distribution too fine for the hitting check");
  }
  std::vector<u128> pow(static_cast<std::size_t>(e_max) + 1, 1);
  for (int i = 1; i <= e_max; ++i) pow[i] = pow[i - 1] * static_cast<unsigned>(mu.d);
  std::vector<u128> units(mu.size(), 0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!mu.is_zero(i)) units[i] = pow[e_max - mu.exponents[i]];
  }
  *target = pow[e_max - 1];
  return units;
}

bool hits_units(const std::vector<std::vector<std::uint64_t>>& masks, const std::vector<u128>& units, u128 target) {
  for (const auto& parts : masks) {
    bool all = true;
    for (auto m : parts) {
      u128 sum = 0;
      for (std::uint64_t rest = m; rest; rest &= rest - 1) sum += units[std::countr_zero(rest)];
      if (sum != target) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

bool hits(const QuestionSet& Q, const DAdicDistribution& mu) {
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& q : Q) {
    if (static_cast<int>(q.arity()) == mu.d) masks.push_back(q.masks());
  }
  u128 target = 0;
  const auto units = units_of(mu, &target);
  return hits_units(masks, units, target);
}

OptimalityVerdict is_optimal_question_set(const QuestionSet& Q, int n, int d, bool cross_check, const Limits& limits) {
  if (n < 1 || n > 64) throw DomainError("verifier supports 1 <= n <= 64");
  if (cross_check && n > 6) throw DomainError("cost cross-check supports n <= 6");
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& q : Q) {
    if (static_cast<int>(q.arity()) != d) throw DomainError("question arity differs from d");
    q.validate(n);
    masks.push_back(q.masks());
  }
  EnumerationFilter filter;
  filter.full_support = false;
  filter.non_constant = false;
  filter.canonical = false;

  OptimalityVerdict verdict;
  bool cost_ok = true;
  enumerate_dadic(
      n, d, filter,
      [&](const DAdicDistribution& mu) {
        ++verdict.distributions_checked;
        u128 target = 0;
        const auto units = units_of(mu, &target);
        if (!hits_units(masks, units, target)) {
          if (!verdict.counterexample || labeled_less(mu, *verdict.counterexample)) verdict.counterexample = mu;
        }
        if (cross_check && cost_ok) {
          const auto pi = mu.probabilities();
          Rational entropy_cost = 0;
          for (std::size_t i = 0; i < mu.size(); ++i) {
            if (!mu.is_zero(i)) entropy_cost += pi[i] * mu.exponents[i];
          }
          try {
            cost_ok = restricted_opt_cost(pi, Q, d, limits).cost == entropy_cost;
          } catch (const DomainError&) {
            cost_ok = false;
          }
        }
      },
      limits);
  verdict.optimal = !verdict.counterexample.has_value();
  if (cross_check) {
    verdict.cost_method_optimal = cost_ok;
    verdict.methods_agree = cost_ok == verdict.optimal;
  }
  return verdict;
}

}  // namespace qsplit
