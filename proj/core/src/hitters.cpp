#include "qsplit/hitters.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <random>

#include "qsplit/errors.hpp"
#include "qsplit/splitting.hpp"

namespace qsplit {

std::string to_string(HitterMethod method) {
  switch (method) {
    case HitterMethod::exact: return "exact";
    case HitterMethod::random: return "random";
    case HitterMethod::halving: return "halving";
    case HitterMethod::greedy: return "greedy";
  }
  return "unknown";
}

HitterMethod parse_hitter_method(const std::string& name) {
  if (name == "exact") return HitterMethod::exact;
  if (name == "random") return HitterMethod::random;
  if (name == "halving") return HitterMethod::halving;
  if (name == "greedy") return HitterMethod::greedy;
  throw DomainError("unknown hitter method: " + name);
}

QuestionSet all_questions(int n, int d) {
  if (n < 1 || d < 2) throw DomainError("all_questions needs n >= 1 and d >= 2");
  QuestionSet out;
  if (d > n) return out;
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> grow = [&](int i, int used) {
    if (n - i < d - used) return;
    if (i == n) {
      Question q;
      q.parts.resize(static_cast<std::size_t>(d));
      for (int x = 0; x < n; ++x) q.parts[block[x]].push_back(x);
      out.push_back(std::move(q));
      return;
    }
    for (int b = 0; b <= std::min(used, d - 1); ++b) {
      block[i] = b;
      grow(i + 1, std::max(used, b + 1));
    }
  };
  block[0] = 0;
  grow(1, 1);
  return out;
}

namespace {

constexpr std::size_t kMaxQuestions = 512;
using Edge = std::bitset<kMaxQuestions>;

struct HittingInstance {
  QuestionSet universe;
  std::vector<Edge> per_distribution;  // one edge per labeled distribution
};

HittingInstance build_instance(int n, int d, const Limits& limits) {
  HittingInstance inst;
  inst.universe = all_questions(n, d);
  if (inst.universe.size() > kMaxQuestions) {
    throw ResourceCapError("question universe of " + std::to_string(inst.universe.size()) +
                           " partitions exceeds the exact-solver limit of " + std::to_string(kMaxQuestions));
  }
  std::vector<QuestionSet> singles;
  singles.reserve(inst.universe.size());
  for (const auto& q : inst.universe) singles.push_back({q});
  EnumerationFilter filter;
  filter.full_support = false;
  filter.non_constant = false;
  filter.canonical = false;
  enumerate_dadic(
      n, d, filter,
      [&](const DAdicDistribution& mu) {
        Edge e;
        for (std::size_t q = 0; q < singles.size(); ++q) {
          if (hits(singles[q], mu)) e.set(q);
        }
        inst.per_distribution.push_back(e);
      },
      limits);
  return inst;
}

// Distinct edges with every superset of another edge removed, smallest first.
std::vector<Edge> minimal_edges(const std::vector<Edge>& edges) {
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    for (std::size_t i = 0; i < kMaxQuestions; ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  });
  std::vector<Edge> out;
  for (const Edge& e : sorted) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](const Edge& f) { return (f & ~e).none(); });
    if (!dominated) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> greedy_cover(const std::vector<Edge>& edges, std::size_t universe) {
  std::vector<bool> done(edges.size(), false);
  std::size_t remaining = edges.size();
  std::vector<std::size_t> chosen;
  for (const auto& e : edges) {
    if (e.none()) throw DomainError("a distribution is hit by no question");
  }
  while (remaining > 0) {
    std::size_t best_q = 0;
    std::size_t best_gain = 0;
    for (std::size_t q = 0; q < universe; ++q) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < edges.size(); ++i) gain += !done[i] && edges[i][q];
      if (gain > best_gain) {
        best_gain = gain;
        best_q = q;
      }
    }
    chosen.push_back(best_q);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!done[i] && edges[i][best_q]) {
        done[i] = true;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Edge> edges, std::vector<std::size_t> incumbent)
      : edges_(std::move(edges)), best_(std::move(incumbent)) {}

  std::vector<std::size_t> solve() {
    Edge chosen;
    Edge forbidden;
    std::vector<std::size_t> stack;
    search(chosen, forbidden, stack);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Disjoint uncovered edges each need their own question.
  std::size_t packing_bound(const std::vector<std::size_t>& open) const {
    Edge used;
    std::size_t count = 0;
    for (std::size_t i : open) {
      if ((edges_[i] & used).none()) {
        used |= edges_[i];
        ++count;
      }
    }
    return count;
  }

  void search(Edge& chosen, Edge& forbidden, std::vector<std::size_t>& stack) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if ((edges_[i] & chosen).none()) open.push_back(i);
    }
    if (open.empty()) {
      if (stack.size() < best_.size()) best_ = stack;
      return;
    }
    if (stack.size() + packing_bound(open) >= best_.size()) return;
    // Edges are sorted by size, so the first open edge is a smallest one.
    const Edge branch = edges_[open.front()] & ~forbidden;
    std::vector<std::size_t> options;
    for (std::size_t q = 0; q < kMaxQuestions; ++q) {
      if (branch[q]) options.push_back(q);
    }
    Edge local_forbidden = forbidden;
    for (std::size_t q : options) {
      chosen.set(q);
      stack.push_back(q);
      search(chosen, local_forbidden, stack);
      stack.pop_back();
      chosen.reset(q);
      local_forbidden.set(q);
      // Every open edge must still have an allowed question.
      const bool feasible = std::all_of(open.begin(), open.end(),
                                        [&](std::size_t i) { return (edges_[i] & ~local_forbidden).any(); });
      if (!feasible) break;
    }
  }

  std::vector<Edge> edges_;
  std::vector<std::size_t> best_;
};

QuestionSet pick(const QuestionSet& universe, const std::vector<std::size_t>& idx) {
  QuestionSet out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(universe[i]);
  return out;
}

void check_exact_caps(int n, int d) {
  if (n < 1 || d < 2) throw DomainError("hitters need n >= 1 and d >= 2");
}

void maybe_verify(HitterResult& result, int n, int d, bool verify, const Limits& limits) {
  if (!verify || n > kVerifyCap) return;
  result.checked = true;
  result.verified = is_optimal_question_set(result.questions, n, d, false, limits).optimal;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void positive_types(int n, int d, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const int used = static_cast<int>(current.size());
  int sum = 0;
  for (int k : current) sum += k;
  if (used == d - 1) {
    if (n - sum >= 1) {
      current.push_back(n - sum);
      out.push_back(current);
      current.pop_back();
    }
    return;
  }
  for (int k = 1; sum + k + (d - used - 1) <= n; ++k) {
    current.push_back(k);
    positive_types(n, d, current, out);
    current.pop_back();
  }
}

// Decodes index r in [0, multinomial(n; type)) into an assignment of elements to parts.
std::vector<int> decode_assignment(std::uint64_t r, std::vector<int> remaining) {
  int left = 0;
  for (int k : remaining) left += k;
  std::vector<int> assignment;
  assignment.reserve(static_cast<std::size_t>(left));
  while (left > 0) {
    for (std::size_t j = 0; j < remaining.size(); ++j) {
      if (remaining[j] == 0) continue;
      std::vector<unsigned> rest(remaining.begin(), remaining.end());
      --rest[j];
      const auto ways = multinomial(static_cast<unsigned>(left - 1), rest).convert_to<std::uint64_t>();
      if (r < ways) {
        assignment.push_back(static_cast<int>(j));
        --remaining[j];
        break;
      }
      r -= ways;
    }
    --left;
  }
  return assignment;
}

}  // namespace

HitterResult exact_min_hitter(int n, int d, const Limits& limits) {
  check_exact_caps(n, d);
  HitterResult result;
  result.method = HitterMethod::exact;
  const HittingInstance inst = build_instance(n, d, limits);
  if (!inst.per_distribution.empty()) {
    const auto edges = minimal_edges(inst.per_distribution);
    auto incumbent = greedy_cover(edges, inst.universe.size());
    const auto best = BranchAndBound(edges, std::move(incumbent)).solve();
    result.questions = pick(inst.universe, best);
  }
  result.size = result.questions.size();
  maybe_verify(result, n, d, true, limits);
  return result;
}

HitterResult greedy_hitter(int n, int d, const Limits& limits) {
  check_exact_caps(n, d);
  HitterResult result;
  result.method = HitterMethod::greedy;
  const HittingInstance inst = build_instance(n, d, limits);
  if (!inst.per_distribution.empty()) {
    result.questions = pick(inst.universe, greedy_cover(inst.per_distribution, inst.universe.size()));
  }
  result.size = result.questions.size();
  maybe_verify(result, n, d, true, limits);
  return result;
}

HitterResult randomized_hitter(int n, int d, std::uint64_t seed, double multiplier, bool verify,
                               const Limits& limits) {
  if (n < 2 || d < 2) throw DomainError("randomized_hitter needs n >= 2 and d >= 2");
  if (!(multiplier > 0.0)) throw DomainError("multiplier must be positive");
  if (n > 20) throw DomainError("randomized_hitter decodes partitions with 64-bit indices (n <= 20)");
  const Rational rho = rho_min_d(n, d, limits).rho;
  const double per_type =
      std::ceil(multiplier * 2.0 * n * std::log(static_cast<double>(n)) / to_double(rho));
  std::vector<std::vector<int>> types;
  std::vector<int> current;
  positive_types(n, d, current, types);
  limits.require(per_type * static_cast<long double>(types.size()), 16ull * static_cast<unsigned>(n),
                 "randomized_hitter");

  HitterResult result;
  result.method = HitterMethod::random;
  result.seed = seed;
  for (std::size_t t = 0; t < types.size(); ++t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t + 1)));
    const std::vector<unsigned> type_u(types[t].begin(), types[t].end());
    const auto total = multinomial(static_cast<unsigned>(n), type_u).convert_to<std::uint64_t>();
    std::uniform_int_distribution<std::uint64_t> pick_index(0, total - 1);
    for (long long s = 0; s < static_cast<long long>(per_type); ++s) {
      const auto assignment = decode_assignment(pick_index(rng), types[t]);
      Question q;
      q.parts.resize(static_cast<std::size_t>(d));
      for (int x = 0; x < n; ++x) q.parts[assignment[x]].push_back(x);
      result.questions.push_back(std::move(q));
    }
  }
  std::sort(result.questions.begin(), result.questions.end(),
            [](const Question& a, const Question& b) { return a.parts < b.parts; });
  result.questions.erase(std::unique(result.questions.begin(), result.questions.end()), result.questions.end());
  result.size = result.questions.size();
  maybe_verify(result, n, d, verify, limits);
  return result;
}

HitterResult halving_baseline(int n, bool verify, const Limits& limits) {
  if (n < 2) throw DomainError("halving_baseline needs n >= 2");
  if (n > 40) throw DomainError("halving_baseline lists 2^(n/2) questions; n <= 40 supported");
  const int h = n / 2;
  const std::uint64_t prefix = (std::uint64_t{1} << h) - 1;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> sets;
  // Nonempty subsets of the prefix.
  for (std::uint64_t s = prefix; s != 0; s = (s - 1) & prefix) sets.push_back(s);
  // Proper supersets of the prefix.
  const std::uint64_t outside = full & ~prefix;
  for (std::uint64_t s = outside;; s = (s - 1) & outside) {
    if (s != outside && s != 0) sets.push_back(prefix | s);
    if (s == 0) break;
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  HitterResult result;
  result.method = HitterMethod::halving;
  for (std::uint64_t s : sets) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) subset.push_back(i);
    }
    result.questions.push_back(Question::binary(n, std::move(subset)));
  }
  result.size = result.questions.size();
  maybe_verify(result, n, 2, verify, limits);
  return result;
}

}  // namespace qsplit
