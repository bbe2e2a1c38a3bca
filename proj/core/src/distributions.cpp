#include "qsplit/distributions.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <sstream>

#include "qsplit/errors.hpp"

namespace qsplit {

namespace {

// Exponent key that sorts zero-mass entries after every real exponent.
int sort_key(int e) { return e == DAdicDistribution::kZero ? INT_MAX : e; }
int from_key(int k) { return k == INT_MAX ? DAdicDistribution::kZero : k; }

BigInt total_units(int d, std::span<const int> exponents, int scale) {
  BigInt total = 0;
  for (int e : exponents) {
    if (e == DAdicDistribution::kZero) continue;
    total += ipow(d, scale - e);
  }
  return total;
}

}  // namespace

DAdicDistribution DAdicDistribution::from_exponents(int d, std::vector<int> exponents) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (exponents.empty()) throw DomainError("distribution must have at least one element");
  const int n = static_cast<int>(exponents.size());
  int scale = 0;
  for (int e : exponents) {
    if (e == kZero) continue;
    if (e < 0) throw DomainError("exponents must be nonnegative or -1 for zero mass");
    if (e > n - 1) throw DomainError("exponent exceeds n-1");
    scale = std::max(scale, e);
  }
  if (total_units(d, exponents, scale) != ipow(d, scale)) {
    throw DomainError("probabilities do not sum to 1");
  }
  return DAdicDistribution{d, std::move(exponents)};
}

PowerProb DAdicDistribution::prob(std::size_t i) const {
  if (is_zero(i)) return PowerProb::zero(d);
  return PowerProb::of(d, exponents[i]);
}

Rational DAdicDistribution::probability(std::size_t i) const { return prob(i).value(); }

std::vector<Rational> DAdicDistribution::probabilities() const {
  std::vector<Rational> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(probability(i));
  return out;
}

std::size_t DAdicDistribution::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(exponents.begin(), exponents.end(), [](int e) { return e != kZero; }));
}

bool DAdicDistribution::is_constant() const {
  int seen = kZero;
  for (int e : exponents) {
    if (e == kZero) continue;
    if (seen != kZero && e != seen) return false;
    seen = e;
  }
  return true;
}

bool DAdicDistribution::is_canonical() const {
  return std::is_sorted(exponents.begin(), exponents.end(),
                        [](int a, int b) { return sort_key(a) < sort_key(b); });
}

DAdicDistribution DAdicDistribution::canonical() const {
  DAdicDistribution out = *this;
  std::sort(out.exponents.begin(), out.exponents.end(),
            [](int a, int b) { return sort_key(a) < sort_key(b); });
  return out;
}

int DAdicDistribution::max_exponent() const {
  int m = kZero;
  for (int e : exponents) m = std::max(m, e);
  return m;
}

std::string describe(const DAdicDistribution& mu) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) out << ',';
    out << to_string(mu.probability(i));
  }
  out << ')';
  return out.str();
}

bool labeled_less(const DAdicDistribution& lhs, const DAdicDistribution& rhs) {
  return std::lexicographical_compare(lhs.exponents.begin(), lhs.exponents.end(), rhs.exponents.begin(),
                                      rhs.exponents.end(),
                                      [](int a, int b) { return sort_key(a) < sort_key(b); });
}

namespace {

// Canonical full-support d-adic distributions on m elements, built level by level: at level e
// there are `slots` open nodes; j of them become leaves (mass d^-e), the rest split into d.
class CanonicalWalker {
 public:
  CanonicalWalker(int m, int d) : m_(m), d_(d) {}

  template <typename Visit>
  void walk(Visit&& visit) {
    std::vector<int> exps;
    exps.reserve(m_);
    step(0, 1, 0, exps, visit);
  }

 private:
  template <typename Visit>
  void step(int level, long long slots, int used, std::vector<int>& exps, Visit& visit) {
    for (long long j = slots; j >= 0; --j) {
      const long long rest = slots - j;
      const long long after = used + j;
      if (rest == 0) {
        if (after != m_) continue;
      } else if (after + rest * d_ > m_) {
        continue;
      }
      exps.insert(exps.end(), static_cast<std::size_t>(j), level);
      if (rest == 0) {
        visit(exps);
      } else {
        step(level + 1, rest * d_, static_cast<int>(after), exps, visit);
      }
      exps.resize(exps.size() - static_cast<std::size_t>(j));
    }
  }

  int m_;
  int d_;
};

}  // namespace

BigInt count_canonical(int m, int d) {
  if (m < 1 || d < 2) return 0;
  std::map<std::pair<long long, int>, BigInt> memo;
  std::function<BigInt(long long, int)> count = [&](long long slots, int used) -> BigInt {
    auto key = std::make_pair(slots, used);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt total = 0;
    for (long long j = slots; j >= 0; --j) {
      const long long rest = slots - j;
      const long long after = used + j;
      if (rest == 0) {
        if (after == m) total += 1;
      } else if (after + rest * d <= m) {
        total += count(rest * d, static_cast<int>(after));
      }
    }
    memo.emplace(key, total);
    return total;
  };
  return count(1, 0);
}

namespace {

bool passes(const std::vector<int>& support_exps, const EnumerationFilter& filter) {
  const bool constant =
      std::all_of(support_exps.begin(), support_exps.end(), [&](int e) { return e == support_exps.front(); });
  if (filter.non_dirac && support_exps.size() == 1) return false;
  if (filter.non_constant && constant) return false;
  return true;
}

template <typename Visit>
void walk_filtered(int n, int d, const EnumerationFilter& filter, Visit&& visit) {
  const int lowest = filter.full_support ? n : 1;
  for (int m = lowest; m <= n; ++m) {
    CanonicalWalker(m, d).walk([&](const std::vector<int>& support_exps) {
      if (!passes(support_exps, filter)) return;
      std::vector<int> exps = support_exps;
      exps.resize(static_cast<std::size_t>(n), DAdicDistribution::kZero);
      visit(exps);
    });
  }
}

BigInt labelings(const std::vector<int>& canonical_exps) {
  std::map<int, unsigned> mult;
  for (int e : canonical_exps) ++mult[e];
  std::vector<unsigned> parts;
  for (const auto& [e, k] : mult) parts.push_back(k);
  return multinomial(static_cast<unsigned>(canonical_exps.size()), parts);
}

}  // namespace

BigInt count_enumerated(int n, int d, const EnumerationFilter& filter) {
  if (n < 1 || d < 2) throw DomainError("enumeration requires n >= 1 and d >= 2");
  BigInt total = 0;
  walk_filtered(n, d, filter, [&](const std::vector<int>& exps) {
    total += filter.canonical ? BigInt(1) : labelings(exps);
  });
  return total;
}

void enumerate_dadic(int n, int d, const EnumerationFilter& filter,
                     const std::function<void(const DAdicDistribution&)>& visit, const Limits& limits) {
  const BigInt projected = count_enumerated(n, d, filter);
  limits.require(static_cast<long double>(projected.convert_to<double>()),
                 sizeof(int) * static_cast<std::uint64_t>(n) + sizeof(DAdicDistribution), "enumerate_dadic");
  walk_filtered(n, d, filter, [&](const std::vector<int>& exps) {
    if (filter.canonical) {
      visit(DAdicDistribution{d, exps});
      return;
    }
    std::vector<int> keys(exps.size());
    std::transform(exps.begin(), exps.end(), keys.begin(), sort_key);
    DAdicDistribution mu{d, exps};
    do {
      std::transform(keys.begin(), keys.end(), mu.exponents.begin(), from_key);
      visit(mu);
    } while (std::next_permutation(keys.begin(), keys.end()));
  });
}

std::vector<DAdicDistribution> enumerate_dadic_list(int n, int d, const EnumerationFilter& filter,
                                                    const Limits& limits) {
  std::vector<DAdicDistribution> out;
  enumerate_dadic(n, d, filter, [&](const DAdicDistribution& mu) { out.push_back(mu); }, limits);
  return out;
}

namespace {

// Indices ordered by nonincreasing mass, zeros last, ties by index.
std::vector<int> mass_order(const DAdicDistribution& mu) {
  std::vector<int> order(mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sort_key(mu.exponents[a]) < sort_key(mu.exponents[b]); });
  return order;
}

// True when lhs precedes rhs as 0/1 indicator vectors over x_1, x_2, ...
bool indicator_less(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  std::size_t i = 0;
  while (i < lhs.size() && i < rhs.size()) {
    if (lhs[i] != rhs[i]) return lhs[i] > rhs[i];  // the set holding the smaller index has a 1 first
    ++i;
  }
  return lhs.size() < rhs.size();
}

}  // namespace

TailReport tail(const DAdicDistribution& mu) {
  if (mu.d != 2) throw DomainError("tail is defined for dyadic distributions");
  if (mu.support_size() < 2) throw DomainError("tail of a Dirac distribution");
  const std::vector<int> order = mass_order(mu);
  const int nz = static_cast<int>(mu.support_size());
  const auto exp_at = [&](int pos) { return mu.exponents[order[pos]]; };

  for (int len = nz - 1; len >= 1; --len) {
    const int first = nz - len;
    int a = 0;
    bool ok = true;
    if (len == 1) {
      a = exp_at(first);
    } else {
      a = exp_at(first) - 1;
      for (int j = 0; j < len - 1 && ok; ++j) ok = exp_at(first + j) == a + 1 + j;
      ok = ok && exp_at(nz - 1) == a + len - 1;
    }
    if (!ok || a < 1) continue;
    for (int pos = 0; pos < first && ok; ++pos) ok = exp_at(pos) <= a;
    if (!ok) continue;

    TailReport report;
    if (len == 1) {
      // Any element of mass 2^-a qualifies; the last index gives the smallest indicator vector.
      int pick = -1;
      for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
        if (mu.exponents[i] == a) pick = i;
      }
      report.indices = {pick};
    } else {
      for (int pos = first; pos < nz; ++pos) report.indices.push_back(order[pos]);
      std::sort(report.indices.begin(), report.indices.end());
    }
    report.a = a;
    report.total = inverse_power(2, a);
    return report;
  }
  throw DomainError("no tail exists");
}

TailReport generalized_tail(const DAdicDistribution& mu) {
  const int d = mu.d;
  const int emax = mu.max_exponent();
  std::vector<TailReport> candidates;
  for (int a = 1; a <= emax; ++a) {
    std::vector<int> below;
    Rational mass = 0;
    for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
      if (!mu.is_zero(i) && mu.exponents[i] > a) {
        below.push_back(i);
        mass += mu.probability(i);
      }
    }
    const Rational target = inverse_power(d, a);
    if (!below.empty()) {
      if (mass == target) candidates.push_back(TailReport{below, a, target});
      continue;
    }
    for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
      if (mu.exponents[i] == a) candidates.push_back(TailReport{{i}, a, target});
    }
  }
  if (candidates.empty()) throw DomainError("no generalized tail exists");
  return *std::min_element(candidates.begin(), candidates.end(), [](const TailReport& x, const TailReport& y) {
    if (x.indices.size() != y.indices.size()) return x.indices.size() > y.indices.size();
    if (x.a != y.a) return x.a > y.a;
    return indicator_less(x.indices, y.indices);
  });
}

int AmountSequence::last_index() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] > 0) return i;
  }
  return -1;
}

void AmountSequence::validate() const {
  if (b < 0) throw DomainError("b must be nonnegative");
  if (beta < 1 || beta >= 2) throw DomainError("beta must lie in [1,2)");
  if (c.empty() || c[0] <= 0) throw DomainError("c_0 must be positive");
  Rational weighted = 0;
  Rational mass = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] > 1) throw DomainError("c_i must lie in [0,1]");
    mass += c[i];
    weighted += c[i] * inverse_power(2, static_cast<int>(i));
  }
  if (mass > 1) throw DomainError("sum of c_i exceeds 1");
  if (weighted * beta * Rational(ipow(2, b)) != 1) throw DomainError("sum of c_i 2^(b-i) beta is not 1");
}

std::pair<Rational, int> split_size(long long n) {
  if (n < 1) throw DomainError("n must be positive");
  int k = 0;
  while ((2LL << k) <= n) ++k;
  return {Rational(BigInt(n), ipow(2, k)), k};
}

bool is_k_feasible(const AmountSequence& seq, int k) {
  if (k < 0) return false;
  const Rational scale = seq.beta * Rational(ipow(2, k));
  for (const auto& ci : seq.c) {
    const Rational count = ci * scale;
    if (count < 0 || boost::multiprecision::denominator(count) != 1) return false;
  }
  return true;
}

DAdicDistribution from_amount_sequence(const AmountSequence& seq, int k) {
  seq.validate();
  const Rational n_exact = seq.beta * Rational(ipow(2, k));
  if (boost::multiprecision::denominator(n_exact) != 1) throw DomainError("beta * 2^k is not an integer");
  if (!is_k_feasible(seq, k)) throw DomainError("amount sequence is not k-feasible");
  if (seq.b > k) throw DomainError("b exceeds k");
  const long long n = boost::multiprecision::numerator(n_exact).convert_to<long long>();
  const int t = seq.last_index();

  std::vector<int> exps;
  long long placed = 0;
  for (int i = 0; i <= t; ++i) {
    const long long count = (seq.c[i] * n_exact).convert_to<long long>();
    exps.insert(exps.end(), static_cast<std::size_t>(count), k - seq.b + i);
    placed += count;
  }
  const long long tail_len = n - placed + 1;
  if (tail_len > 1) {
    const int base = k - seq.b + t;
    exps.pop_back();  // one element of the last class becomes the tail
    for (long long j = 1; j < tail_len; ++j) exps.push_back(base + static_cast<int>(j));
    exps.push_back(base + static_cast<int>(tail_len - 1));
  }
  return DAdicDistribution::from_exponents(2, std::move(exps)).canonical();
}

AmountSequence to_amount_sequence(const DAdicDistribution& mu, int k) {
  if (mu.d != 2) throw DomainError("amount sequences encode dyadic distributions");
  if (!mu.is_full_support()) throw DomainError("amount sequences require full support");
  if (!mu.is_canonical()) throw DomainError("amount sequences require canonical order");
  if (mu.is_constant()) throw DomainError("constant distribution has no amount sequence");
  const long long n = static_cast<long long>(mu.size());
  const Rational beta = Rational(BigInt(n), ipow(2, k));
  if (beta < 1 || beta >= 2) throw DomainError("n is not beta * 2^k with beta in [1,2)");

  const TailReport t = tail(mu);
  std::vector<int> contracted;
  std::vector<bool> in_tail(mu.size(), false);
  for (int i : t.indices) in_tail[i] = true;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!in_tail[i]) contracted.push_back(mu.exponents[i]);
  }
  contracted.push_back(t.a);
  std::sort(contracted.begin(), contracted.end());

  AmountSequence seq;
  seq.beta = beta;
  seq.b = k - contracted.front();
  if (seq.b < 0) throw DomainError("largest mass is below 2^-k");
  const int classes = contracted.back() - contracted.front() + 1;
  std::vector<long long> counts(static_cast<std::size_t>(classes), 0);
  for (int e : contracted) ++counts[e - contracted.front()];
  for (long long count : counts) seq.c.emplace_back(BigInt(count), BigInt(n));
  return seq;
}

namespace {

void check_prefix_input(int d, std::span<const int> exponents, int a) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (exponents.empty()) throw DomainError("empty probability list");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw DomainError("prefix_split needs nonzero powers of 1/d");
    if (i > 0 && exponents[i] < exponents[i - 1]) throw DomainError("probabilities must be nonincreasing");
  }
  if (a < 0 || a > exponents.front()) throw DomainError("a must satisfy 0 <= a <= e_1");
}

}  // namespace

std::size_t prefix_split(int d, std::span<const int> exponents, int a) {
  check_prefix_input(d, exponents, a);
  const int scale = exponents.back();
  const BigInt target = ipow(d, scale - a);
  BigInt sum = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    sum += ipow(d, scale - exponents[i]);
    if (sum == target) return i + 1;
    if (sum > target) break;
  }
  throw DomainError("no prefix of mass d^-a (total mass too small)");
}

std::vector<std::pair<std::size_t, std::size_t>> prefix_intervals(int d, std::span<const int> exponents, int a) {
  check_prefix_input(d, exponents, a);
  const int scale = exponents.back();
  const BigInt unit = ipow(d, scale - a);
  const BigInt total = total_units(d, exponents, scale);
  if (total % unit != 0) throw DomainError("total mass is not a multiple of d^-a");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  while (begin < exponents.size()) {
    const std::size_t len = prefix_split(d, exponents.subspan(begin), a);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

}  // namespace qsplit
