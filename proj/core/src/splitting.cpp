#include "qsplit/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include "qsplit/errors.hpp"

namespace qsplit {

namespace {

using u128 = unsigned __int128;

BigInt to_big(u128 x) {
  BigInt hi = static_cast<unsigned long long>(x >> 64);
  return (hi << 64) | BigInt(static_cast<unsigned long long>(x));
}
BigInt to_big(const BigInt& x) { return x; }

template <typename Count>
std::vector<std::vector<Count>> pascal(int n) {
  std::vector<std::vector<Count>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(static_cast<std::size_t>(i) + 1, Count(1));
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

// Number of subsets of each size with mass exactly 1/2, given class sizes per exponent.
// Levels are processed from the smallest mass upwards; `carry` counts pending halves of the
// current level. When `tail_cap` is set, at most (class size - 1) elements of the largest
// exponent may be chosen.
template <typename Count>
std::vector<Count> half_mass_by_size(const std::vector<int>& per_exponent, int zeros, bool tail_cap,
                                     const std::vector<std::vector<Count>>& binom) {
  int total = zeros;
  for (int m : per_exponent) total += m;
  const int top = static_cast<int>(per_exponent.size()) - 1;
  // state[carry][size]
  std::vector<std::vector<Count>> state(1, std::vector<Count>(static_cast<std::size_t>(total) + 1, Count(0)));
  state[0][0] = Count(1);
  for (int e = top; e >= 1; --e) {
    const int m = per_exponent[e];
    const int limit = (tail_cap && e == top) ? m - 1 : m;
    const int max_carry = static_cast<int>(state.size()) - 1;
    const int next_carries = e > 1 ? (max_carry + limit) / 2 + 1 : 1;
    std::vector<std::vector<Count>> next(static_cast<std::size_t>(next_carries),
                                         std::vector<Count>(static_cast<std::size_t>(total) + 1, Count(0)));
    for (int carry = 0; carry <= max_carry; ++carry) {
      for (int size = 0; size <= total; ++size) {
        const Count& v = state[carry][size];
        if (v == Count(0)) continue;
        for (int j = 0; j <= limit; ++j) {
          const int t = carry + j;
          int nc = 0;
          if (e > 1) {
            if (t % 2 != 0) continue;
            nc = t / 2;
          } else if (t != 1) {
            continue;
          }
          next[nc][size + j] += v * binom[m][j];
        }
      }
    }
    state = std::move(next);
  }
  std::vector<Count> by_size(static_cast<std::size_t>(total) + 1, Count(0));
  if (top < 1) return by_size;
  for (int size = 0; size <= total; ++size) {
    if (state[0][size] == Count(0)) continue;
    for (int z = 0; z <= zeros; ++z) by_size[size + z] += state[0][size] * binom[zeros][z];
  }
  return by_size;
}

std::vector<int> class_sizes(const DAdicDistribution& mu, int* zeros) {
  std::vector<int> per(static_cast<std::size_t>(std::max(mu.max_exponent(), 0)) + 1, 0);
  *zeros = 0;
  for (int e : mu.exponents) {
    if (e == DAdicDistribution::kZero) {
      ++*zeros;
    } else {
      ++per[e];
    }
  }
  return per;
}

template <typename Count>
std::vector<BigInt> splitting_sizes(const DAdicDistribution& mu) {
  int zeros = 0;
  const std::vector<int> per = class_sizes(mu, &zeros);
  const auto binom = pascal<Count>(static_cast<int>(mu.size()));
  const auto raw = half_mass_by_size<Count>(per, zeros, false, binom);
  std::vector<BigInt> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.push_back(to_big(v));
  return out;
}

std::vector<BigInt> splitting_sizes_any(const DAdicDistribution& mu) {
  if (mu.size() <= 120) return splitting_sizes<u128>(mu);
  return splitting_sizes<BigInt>(mu);
}

// Cheap max density for the enumeration loops.
Rational max_density_from_sizes(const std::vector<BigInt>& sizes, int n) {
  std::optional<Rational> best;
  for (int i = 1; i < n; ++i) {
    if (sizes[i] == 0) continue;
    Rational r(sizes[i], binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)));
    if (!best || r > *best) best = r;
  }
  if (!best) throw DomainError("no splitting set exists");
  return *best;
}

}  // namespace

Rational DensityProfile::rho() const {
  if (entries.empty()) throw DomainError("empty density profile");
  Rational best = entries.begin()->second.ratio;
  for (const auto& [type, entry] : entries) best = std::max(best, entry.ratio);
  return best;
}

BigInt DensityProfile::count_of_size(int i) const {
  auto it = entries.find(std::vector<int>{i, n - i});
  return it == entries.end() ? BigInt(0) : it->second.count;
}

DensityProfile splitting_counts(const DAdicDistribution& mu) {
  if (mu.d != 2) throw DomainError("splitting_counts expects a dyadic distribution");
  const int n = static_cast<int>(mu.size());
  const std::vector<BigInt> sizes = splitting_sizes_any(mu);
  DensityProfile profile;
  profile.n = n;
  profile.d = 2;
  for (int i = 1; i < n; ++i) {
    if (sizes[i] == 0) continue;
    const BigInt denom = binomial(static_cast<unsigned>(n), static_cast<unsigned>(i));
    profile.entries.emplace(std::vector<int>{i, n - i}, DensityEntry{sizes[i], denom, Rational(sizes[i], denom)});
  }
  if (profile.entries.empty()) throw DomainError("no splitting set exists for " + describe(mu));
  return profile;
}

Rational max_relative_density(const DAdicDistribution& mu) { return splitting_counts(mu).rho(); }

namespace {

void compositions(int total, int parts, std::vector<int>& current, const std::function<void()>& visit) {
  if (static_cast<int>(current.size()) == parts - 1) {
    current.push_back(total);
    visit();
    current.pop_back();
    return;
  }
  for (int j = 0; j <= total; ++j) {
    current.push_back(j);
    compositions(total - j, parts, current, visit);
    current.pop_back();
  }
}

std::vector<unsigned> as_unsigned(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

DensityProfile dividing_counts(const DAdicDistribution& mu) {
  const int d = mu.d;
  const int n = static_cast<int>(mu.size());
  int zeros = 0;
  const std::vector<int> per = class_sizes(mu, &zeros);
  const int top = static_cast<int>(per.size()) - 1;

  // key: carry_1..carry_d, size_1..size_d
  std::map<std::vector<int>, BigInt> state;
  state[std::vector<int>(2 * static_cast<std::size_t>(d), 0)] = 1;
  std::vector<int> split;
  for (int e = top; e >= 1; --e) {
    const int m = per[e];
    std::map<std::vector<int>, BigInt> next;
    for (const auto& [key, count] : state) {
      compositions(m, d, split, [&, &key = key, &count = count] {
        std::vector<int> nk = key;
        for (int j = 0; j < d; ++j) {
          const int t = key[j] + split[j];
          if (e > 1) {
            if (t % d != 0) return;
            nk[j] = t / d;
          } else {
            if (t != 1) return;
            nk[j] = 0;
          }
          nk[d + j] = key[d + j] + split[j];
        }
        next[nk] += count * multinomial(static_cast<unsigned>(m), as_unsigned(split));
      });
    }
    state = std::move(next);
  }

  DensityProfile profile;
  profile.n = n;
  profile.d = d;
  if (top >= 1) {
    std::map<std::vector<int>, BigInt> by_type;
    for (const auto& [key, count] : state) {
      compositions(zeros, d, split, [&, &key = key, &count = count] {
        std::vector<int> type(key.begin() + d, key.end());
        for (int j = 0; j < d; ++j) type[j] += split[j];
        by_type[type] += count * multinomial(static_cast<unsigned>(zeros), as_unsigned(split));
      });
    }
    for (const auto& [type, count] : by_type) {
      const BigInt denom = multinomial(static_cast<unsigned>(n), as_unsigned(type));
      profile.entries.emplace(type, DensityEntry{count, denom, Rational(count, denom)});
    }
  }
  if (profile.entries.empty()) throw DomainError("no dividing partition exists for " + describe(mu));
  return profile;
}

namespace {

struct Candidate {
  Rational rho;
  std::size_t index = 0;
};

// Minimum of score over items, ties resolved by the smaller `better_tie` ordering.
template <typename Item, typename Score, typename Tie>
std::optional<Candidate> parallel_min(const std::vector<Item>& items, unsigned threads, Score score, Tie tie_less) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  std::vector<std::optional<Candidate>> partial(threads);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < items.size(); i += threads) {
      std::optional<Rational> r = score(items[i]);
      if (!r) continue;
      auto& best = partial[w];
      if (!best || *r < best->rho || (*r == best->rho && tie_less(items[i], items[best->index]))) {
        best = Candidate{*r, i};
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::optional<Candidate> best;
  for (const auto& p : partial) {
    if (!p) continue;
    if (!best || p->rho < best->rho || (p->rho == best->rho && tie_less(items[p->index], items[best->index]))) {
      best = p;
    }
  }
  return best;
}

}  // namespace

RhoResult rho_min(int n, bool exclude_uniform, const Limits& limits) {
  if (n < 2) throw DomainError("rho_min needs n >= 2");
  EnumerationFilter filter;
  filter.non_constant = exclude_uniform;
  const auto dists = enumerate_dadic_list(n, 2, filter, limits);
  const auto best = parallel_min(
      dists, limits.threads,
      [n](const DAdicDistribution& mu) -> std::optional<Rational> {
        return max_density_from_sizes(splitting_sizes_any(mu), n);
      },
      labeled_less);
  if (!best) throw DomainError("rho_min: no non-constant full-support dyadic distribution on " + std::to_string(n) +
                               " elements");
  return RhoResult{best->rho, dists[best->index]};
}

Rational rho_star_min(int n, const Limits& limits) {
  if (n < 3) throw DomainError("rho_star_min needs n >= 3");
  std::vector<DAdicDistribution> contracted;
  EnumerationFilter filter;
  filter.non_constant = false;
  for (int m = 2; m <= n; ++m) {
    for (auto& mu : enumerate_dadic_list(m, 2, filter, limits)) {
      if (m == n && mu.is_constant()) continue;
      contracted.push_back(std::move(mu));
    }
  }
  const auto binom = pascal<BigInt>(n);
  const auto best = parallel_min(
      contracted, limits.threads,
      [&](const DAdicDistribution& mu) -> std::optional<Rational> {
        int zeros = 0;
        const std::vector<int> per = class_sizes(mu, &zeros);
        const auto sizes = half_mass_by_size<BigInt>(per, 0, true, binom);
        std::optional<Rational> worst;
        for (int i = 1; i < n && i < static_cast<int>(sizes.size()); ++i) {
          if (sizes[i] == 0) continue;
          Rational r(sizes[i], binom[n][i]);
          if (!worst || r > *worst) worst = r;
        }
        return worst;
      },
      labeled_less);
  if (!best) throw DomainError("rho_star_min: every S_d is empty");
  return best->rho;
}

RhoResult rho_min_d(int n, int d, const Limits& limits) {
  if (n < 2 || d < 2) throw DomainError("rho_min_d needs n >= 2 and d >= 2");
  EnumerationFilter filter;
  filter.full_support = false;
  filter.non_constant = false;
  const auto dists = enumerate_dadic_list(n, d, filter, limits);
  const auto best = parallel_min(
      dists, limits.threads,
      [](const DAdicDistribution& mu) -> std::optional<Rational> {
        try {
          return dividing_counts(mu).rho();
        } catch (const DomainError&) {
          return std::nullopt;
        }
      },
      labeled_less);
  if (!best) throw DomainError("rho_min_d: no d-adic distribution with a dividing partition");
  return RhoResult{best->rho, dists[best->index]};
}

BlockPartition block_partition(const DAdicDistribution& mu) {
  if (mu.is_dirac()) throw DomainError("block_partition of a Dirac distribution");
  const int d = mu.d;
  std::vector<int> pool;
  std::vector<int> zero_members;
  for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
    (mu.is_zero(i) ? zero_members : pool).push_back(i);
  }
  std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) { return mu.exponents[a] < mu.exponents[b]; });

  BlockPartition out;
  while (!pool.empty()) {
    const int e = mu.exponents[pool.front()];
    std::size_t run = 0;
    while (run < pool.size() && mu.exponents[pool[run]] == e) ++run;
    Block block;
    block.p = PowerProb::of(d, e);
    int size = static_cast<int>(run);
    block.c = (size + d - 1) / d;
    block.r = block.c * d - size;
    if (block.r == 0 && run < pool.size()) {
      // Keep one element back so that the next run starts a block of its own mass class.
      --size;
      block.r = 1;
    }
    block.D.assign(pool.begin(), pool.begin() + size);
    std::vector<int> rest(pool.begin() + size, pool.end());
    if (block.r > 0) {
      std::vector<int> rest_exps;
      rest_exps.reserve(rest.size());
      for (int i : rest) rest_exps.push_back(mu.exponents[i]);
      const auto chunks = prefix_intervals(d, rest_exps, e);
      if (static_cast<int>(chunks.size()) < block.r) throw DomainError("block_partition: suffix mass too small");
      const std::size_t cut = chunks[chunks.size() - static_cast<std::size_t>(block.r)].first;
      block.E.assign(rest.begin() + static_cast<std::ptrdiff_t>(cut), rest.end());
      rest.resize(cut);
    }
    std::sort(block.D.begin(), block.D.end());
    std::sort(block.E.begin(), block.E.end());
    out.blocks.push_back(std::move(block));
    pool = std::move(rest);
  }
  if (!zero_members.empty()) {
    Block block;
    block.p = PowerProb::zero(d);
    const int size = static_cast<int>(zero_members.size());
    block.c = (size + d - 1) / d;
    block.r = block.c * d - size;
    block.D = zero_members;
    out.blocks.push_back(std::move(block));
  }
  out.gamma = static_cast<int>(out.blocks.size());
  return out;
}

}  // namespace qsplit
