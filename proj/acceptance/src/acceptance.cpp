#include "qsplit/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "qsplit/dary_bounds.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/gbeta.hpp"
#include "qsplit/hitters.hpp"
#include "qsplit/oracles.hpp"
#include "qsplit/rounding.hpp"
#include "qsplit/splitting.hpp"
#include "qsplit/strategy.hpp"

namespace qsplit::acceptance {

namespace {

// Tolerances pinned per criterion.
constexpr double kLog2Magic = 0.32192809488736235;  // log2(1.25)
constexpr double kUniformTol = 1e-7;
constexpr double kUniformXTol = 1e-6;
constexpr double kExactTol = 1e-9;
constexpr double kSingleTol = 5e-4;
constexpr double kScanValue = -0.305758;
constexpr double kScanTol = 1e-5;
constexpr double kScanBeta = 1.80941;
constexpr double kScanBetaTol = 0.01;
constexpr double kFloorValue = -0.3040;
constexpr double kMagicTol = 1e-12;
constexpr double kEntropyTol = 1e-12;
constexpr double kRoundingEps = 1e-3;
constexpr double kLeverTol = 1e-9;
constexpr double kFeasTol = 1e-12;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", x);
  return buf;
}

struct Check {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
  CriterionResult finish(int id, const std::string& name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.pass = pass;
    r.detail = detail.str();
    if (!pass) r.detail = "first failure: " + first_failure + "; " + r.detail;
    return r;
  }
};

EnumerationFilter canonical_full(bool non_constant, bool non_dirac) {
  EnumerationFilter f;
  f.full_support = true;
  f.non_constant = non_constant;
  f.non_dirac = non_dirac;
  f.canonical = true;
  return f;
}

CriterionResult exact_densities(Profile, const Limits& limits) {
  Check c;
  const auto r3 = rho_min(3, true, limits);
  c.expect(r3.rho == Rational(1, 3) && r3.witness.exponents == std::vector<int>{1, 2, 2}, "rho_min(3)");
  const auto r5 = rho_min(5, true, limits);
  const auto sb = DAdicDistribution::from_exponents(2, {1, 2, 3, 4, 4});
  const Rational sb_rho = max_relative_density(sb);
  c.expect(r5.rho <= Rational(1, 5) && sb_rho == Rational(1, 5), "rho_min(5) witness");
  std::size_t checked = 0;
  for (int n = 2; n <= 10; ++n) {
    enumerate_dadic(n, 2, canonical_full(false, true), [&](const DAdicDistribution& mu) {
      const auto profile = splitting_counts(mu);
      const auto brute = oracle::brute_splitting_counts(mu);
      for (int i = 1; i < n; ++i) {
        const auto it = brute.find(i);
        const BigInt want = it == brute.end() ? BigInt(0) : it->second;
        c.expect(profile.count_of_size(i) == want, "splitting_counts " + describe(mu));
      }
      ++checked;
    }, limits);
  }
  c.detail << "rho_min(3)=" << to_string(r3.rho) << " rho_min(5)=" << to_string(r5.rho)
           << " profiles_checked=" << checked;
  return c.finish(1, "exact-densities");
}

CriterionResult exact_hitters(Profile, const Limits& limits) {
  Check c;
  const auto q2 = exact_min_hitter(2, 2, limits).size;
  const auto q3 = exact_min_hitter(3, 2, limits).size;
  c.expect(q2 == 1, "q(2)");
  c.expect(q3 == 3, "q(3)");
  c.detail << "q(2)=" << q2 << " q(3)=" << q3;
  for (int n : {3, 4, 5}) {
    const Rational rho = rho_min(n, true, limits).rho;
    const auto q = exact_min_hitter(n, 2, limits).size;
    const double upper = n * n * std::log2(static_cast<double>(n)) / to_double(rho);
    const bool ok = Rational(static_cast<long long>(q)) * rho >= 1 && static_cast<double>(q) <= upper;
    c.expect(ok, "binary sandwich n=" + std::to_string(n));
    const auto red = verify_reduction(n, 2, limits);
    c.expect(red.holds, "binary reduction n=" + std::to_string(n));
    c.detail << " n=" << n << ":q=" << q << ",1/rho=" << fmt(1.0 / to_double(rho));
  }
  for (auto [n, d] : {std::pair{3, 3}, std::pair{4, 3}}) {
    const auto red = verify_reduction(n, d, limits);
    c.expect(red.holds, "d-ary sandwich (" + std::to_string(n) + "," + std::to_string(d) + ")");
    c.detail << " (" << n << "," << d << "):q=" << red.q << ",1/rho=" << fmt(red.lower);
  }
  return c.finish(2, "exact-hitters");
}

CriterionResult paper_constants(Profile, const Limits&) {
  Check c;
  const auto lb = g_lb_uniform();
  c.expect(std::abs(lb.value + kLog2Magic) <= kUniformTol, "g_lb_uniform value");
  c.expect(std::abs(lb.params.at("x") - 0.4) <= kUniformXTol, "g_lb_uniform argmin");
  const double s125 = g_ub_single_block(1.25, 1).value;
  const double s17 = g_ub_single_block(1.7, 1).value;
  const double s195 = g_ub_single_block(1.95, 0).value;
  c.expect(std::abs(s125 + kLog2Magic) <= kExactTol, "single block (1.25,1)");
  c.expect(std::abs(s17 + 0.3083) <= kSingleTol, "single block (1.7,1)");
  c.expect(std::abs(s195 + 0.30846) <= kSingleTol, "single block (1.95,0)");
  const auto scan = scan_1236();
  c.expect(std::abs(scan.value - kScanValue) <= kScanTol, "scan_1236 value");
  c.expect(std::abs(scan.beta - kScanBeta) <= kScanBetaTol, "scan_1236 beta");
  c.expect(std::exp2(-scan.value) > 1.236, "q(n) base above 1.236");
  c.detail << "lb=" << fmt(lb.value) << "@" << fmt(lb.params.at("x")) << " sb(1.25,1)=" << fmt(s125)
           << " sb(1.7,1)=" << fmt(s17) << " sb(1.95,0)=" << fmt(s195) << " scan=" << fmt(scan.value) << "@"
           << fmt(scan.beta) << " base=" << fmt(std::exp2(-scan.value));
  return c.finish(3, "paper-constants");
}

CriterionResult figure_curves(Profile, const Limits&) {
  Check c;
  const auto rows = curves(1.5, 1.999, 0.005);
  double floor_min = 1.0, floor_max = -1.0;
  std::size_t in_range = 0;
  for (const auto& row : rows) {
    const double single = std::min(row.single_b0, row.single_b1);
    floor_min = std::min(floor_min, single);
    floor_max = std::max(floor_max, single);
    if (row.beta >= 1.78 - 1e-12 && row.beta <= 1.84 + 1e-12) {
      ++in_range;
      c.expect(std::isfinite(row.two_block) && row.two_block < single, "two-block below at beta=" + fmt(row.beta));
    }
  }
  c.expect(in_range > 0, "rows in [1.78,1.84]");
  c.expect(floor_min <= kFloorValue, "single-block floor");
  c.detail << "rows=" << rows.size() << " rows_in_range=" << in_range << " min_single=" << fmt(floor_min)
           << " max_single=" << fmt(floor_max);
  return c.finish(4, "figure-curves");
}

CriterionResult dary_constants(Profile, const Limits&) {
  Check c;
  c.expect(magic_constant(2) == 1.25, "magic_constant(2)");
  double worst = 0.0;
  for (int d = 2; d <= 64; ++d) worst = std::max(worst, std::abs(std::exp2(-f_opt(d)) - magic_constant(d)));
  c.expect(worst <= kMagicTol, "exp2(-f_opt) = magic");
  const double f2 = f_d(2, 0.2);
  c.expect(std::abs(f2 + kLog2Magic) <= kExactTol, "f_2(0.2)");
  double lo = 1e9, hi = 0.0;
  for (int d = 4; d <= 64; ++d) {
    const double ratio = (2.0 - magic_constant(d)) / (std::log2(static_cast<double>(d)) / d);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  c.expect(lo >= 0.3 && hi <= 3.0, "envelope");
  c.detail << "max|exp2(-f_opt)-magic|=" << fmt(worst) << " f_2(0.2)=" << fmt(f2) << " envelope=[" << fmt(lo) << ","
           << fmt(hi) << "]";
  return c.finish(5, "dary-constants");
}

CriterionResult strategy_correctness(Profile profile, const Limits& limits) {
  Check c;
  std::mt19937_64 rng(20240601);
  std::size_t corpus = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = i % 2 == 0 ? 2 : 3;
    const int lo = d == 2 ? 2 : 3;
    const int n = std::uniform_int_distribution<int>(lo, 7)(rng);
    const auto pi = oracle::random_distribution(n, rng);
    const Rational h = huffman(pi, d).cost;
    c.expect(h == oracle::brute_code_cost(pi, d), "huffman vs exhaustive, case " + std::to_string(i));
    const auto restricted = restricted_opt_cost(pi, all_questions(n, d), d, limits);
    c.expect(restricted.cost == h, "restricted vs opt_cost, case " + std::to_string(i));
    ++corpus;
  }
  const int top = profile == Profile::full ? 8 : 5;
  std::size_t dadic = 0;
  for (int d : {2, 3}) {
    for (int n = 1; n <= top; ++n) {
      enumerate_dadic(n, d, canonical_full(false, false), [&](const DAdicDistribution& mu) {
        const Rational cost = opt_cost(mu.probabilities(), d);
        const Rational want = oracle::dadic_entropy(mu);
        c.expect(cost == want, "opt_cost vs entropy " + describe(mu));
        const auto probs = mu.probabilities();
        c.expect(std::abs(entropy(probs, d) - to_double(cost)) <= kEntropyTol, "entropy double " + describe(mu));
        ++dadic;
      }, limits);
    }
  }
  c.detail << "corpus=" << corpus << " dadic_checked=" << dadic << " n<=" << top;
  return c.finish(6, "strategy-correctness");
}

CriterionResult verifier_agreement(Profile profile, const Limits& limits) {
  Check c;
  std::mt19937_64 rng(77);
  std::vector<std::pair<int, int>> combos{{3, 2}, {4, 2}, {3, 3}, {4, 3}};
  if (profile == Profile::full) {
    combos.emplace_back(5, 2);
    combos.emplace_back(5, 3);
  }
  std::size_t sets = 0, optimal = 0, mutated = 0;
  for (auto [n, d] : combos) {
    const auto base = exact_min_hitter(n, d, limits).questions;
    const auto universe = all_questions(n, d);
    for (int j = 0; j < 34; ++j) {
      QuestionSet Q = base;
      for (const auto& q : universe) {
        if (std::bernoulli_distribution(0.3)(rng) && std::find(Q.begin(), Q.end(), q) == Q.end()) Q.push_back(q);
      }
      if (j % 2 == 1) {
        const std::size_t drop = std::uniform_int_distribution<std::size_t>(0, base.size() - 1)(rng);
        Q.erase(std::find(Q.begin(), Q.end(), base[drop]));
        ++mutated;
      }
      const auto verdict = is_optimal_question_set(Q, n, d, true, limits);
      c.expect(verdict.cost_method_optimal.has_value() && verdict.methods_agree,
               "verdicts disagree n=" + std::to_string(n) + " d=" + std::to_string(d));
      optimal += verdict.optimal ? 1 : 0;
      ++sets;
    }
  }
  c.expect(profile == Profile::quick || sets >= 200, "at least 200 question sets");
  for (int n = 2; n <= 6; ++n) {
    const auto r = halving_baseline(n, true, limits);
    c.expect(r.checked && r.verified, "halving_baseline(" + std::to_string(n) + ")");
  }
  c.detail << "sets=" << sets << " optimal=" << optimal << " mutated=" << mutated;
  std::vector<int> ns{3, 4};
  if (profile == Profile::full) ns.push_back(5);
  for (int n : ns) {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto r = randomized_hitter(n, 2, seed, 1.0, true, limits);
      ok += r.checked && r.verified ? 1 : 0;
    }
    c.expect(ok >= 95, "randomized_hitter n=" + std::to_string(n));
    c.detail << " random(n=" << n << ")=" << ok << "/100";
  }
  return c.finish(7, "verifier-agreement");
}

// Feasible (c, b, beta) with c_i beta 2^10 integral.
AmountSequence random_grid_amount(std::mt19937_64& rng) {
  const int K0 = 10;
  for (;;) {
    AmountSequence a;
    a.b = std::uniform_int_distribution<int>(0, 2)(rng);
    a.beta = Rational(8 + std::uniform_int_distribution<int>(0, 7)(rng), 8);
    const int L = std::uniform_int_distribution<int>(1, 5)(rng);
    const Rational n = a.beta * Rational(ipow(2, K0));
    BigInt head = ipow(2, K0 - a.b);
    std::vector<BigInt> counts(static_cast<std::size_t>(L));
    for (int i = 1; i < L; ++i) {
      const BigInt m = std::uniform_int_distribution<int>(1, 60)(rng);
      counts[i] = m * ipow(2, i);
      head -= m;
    }
    if (head <= 0) continue;
    counts[0] = head;
    Rational mass = 0;
    for (const auto& x : counts) mass += Rational(x) / n;
    if (mass > 1) continue;
    for (const auto& x : counts) a.c.push_back(Rational(x) / n);
    a.validate();
    return a;
  }
}

// Feasible (c, b, beta) whose c_i beta have odd denominators.
AmountSequence random_offgrid_amount(std::mt19937_64& rng) {
  for (;;) {
    AmountSequence a;
    a.b = std::uniform_int_distribution<int>(0, 2)(rng);
    a.beta = Rational(8 + std::uniform_int_distribution<int>(0, 7)(rng), 8);
    const int L = std::uniform_int_distribution<int>(2, 5)(rng);
    a.c.assign(static_cast<std::size_t>(L), Rational(0));
    Rational rest = 1 / (a.beta * Rational(ipow(2, a.b)));
    for (int i = 1; i < L; ++i) {
      a.c[i] = Rational(std::uniform_int_distribution<int>(1, 200)(rng), 3 * 7 * 11 * 13 * 17);
      rest -= a.c[i] * inverse_power(2, i);
    }
    if (rest <= 0) continue;
    a.c[0] = rest;
    Rational mass = 0;
    for (const auto& x : a.c) mass += x;
    if (mass > 1 || a.c[0] > 1) continue;
    a.validate();
    return a;
  }
}

// Random alpha, made exactly feasible through its largest-c index; empty when that fails.
std::vector<Rational> random_feasible_alpha(const AmountSequence& a, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(0.5 - spread, 0.5 + spread);
  const std::size_t L = a.c.size();
  std::size_t j = 0;
  for (std::size_t i = 1; i < L; ++i) {
    if (a.c[i] * inverse_power(2, static_cast<int>(i)) > a.c[j] * inverse_power(2, static_cast<int>(j))) j = i;
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Rational> alpha(L);
    for (auto& x : alpha) x = exact_from_double(u(rng));
    alpha[j] = 0;
    const Rational r = exact_residual(a, alpha);
    alpha[j] = -r * Rational(ipow(2, static_cast<int>(j))) / a.c[j];
    if (alpha[j] >= 0 && alpha[j] <= 1) return alpha;
  }
  return {};
}

CriterionResult rounding_lemmas(Profile profile, const Limits&) {
  Check c;
  std::mt19937_64 rng(8);
  const int instances = profile == Profile::full ? 200 : 50;
  int alpha_done = 0, c_done = 0, transfers = 0;
  double worst_alpha = 0.0, worst_c = 0.0, worst_transfer = 0.0;
  for (int t = 0; t < instances; ++t) {
    const auto a = random_grid_amount(rng);
    auto alpha = random_feasible_alpha(a, rng, 0.45);
    if (alpha.empty()) alpha = random_feasible_alpha(a, rng, 0.0);
    const auto r = round_alpha_feasible(a, alpha, kRoundingEps);
    const double dp = std::abs(payoff_exact(a, r.alpha) - payoff_exact(a, alpha));
    worst_alpha = std::max(worst_alpha, dp);
    c.expect(exact_residual(a, r.alpha) == 0, "alpha rounding feasibility");
    c.expect(is_k_feasible_alpha(a, r.alpha, r.K), "alpha rounding K-feasibility");
    c.expect(dp <= kRoundingEps && std::abs(r.delta_P) <= kRoundingEps, "alpha rounding |dP|");
    ++alpha_done;

    const auto b = random_offgrid_amount(rng);
    const auto rc = round_c_feasible(b, kRoundingEps);
    worst_c = std::max(worst_c, rc.delta_P);
    rc.c.validate();
    c.expect(is_k_feasible(rc.c, rc.K), "c rounding K-feasibility");
    c.expect(rc.delta_P <= kRoundingEps, "c rounding bound");
    for (int k = 0; k < 3; ++k) {
      auto at = random_feasible_alpha(rc.c, rng, 0.45);
      if (at.empty()) continue;
      const auto back = alpha_transfer(b, rc, at);
      const double dp2 = std::abs(payoff_exact(rc.c, at) - payoff_exact(b, back));
      worst_transfer = std::max(worst_transfer, dp2);
      c.expect(exact_residual(b, back) == 0, "transfer feasibility");
      c.expect(dp2 <= kRoundingEps, "transfer |dP|");
      ++transfers;
    }
    ++c_done;
  }
  AmountSequence one;
  one.b = 0;
  one.beta = 1;
  one.c = {Rational(1)};
  const auto u1 = round_c_feasible(one, kRoundingEps);
  c.expect(u1.unchanged && u1.K == 0 && u1.c.c == one.c, "c=(1) unchanged");
  const auto u2 = round_alpha_feasible(one, {Rational(1, 2)}, kRoundingEps);
  c.expect(u2.unchanged && u2.alpha == std::vector<Rational>{Rational(1, 2)}, "alpha on c=(1) unchanged");
  AmountSequence g;
  g.b = 1;
  g.beta = Rational(5, 4);
  g.c = {Rational(2, 5)};
  const auto u3 = round_c_feasible(g, kRoundingEps);
  const auto u4 = round_alpha_feasible(g, {Rational(1, 2)}, kRoundingEps);
  c.expect(u3.unchanged && u4.unchanged && u4.delta_P == 0.0, "grid point unchanged");
  c.detail << "alpha_instances=" << alpha_done << " c_instances=" << c_done << " transfers=" << transfers
           << " worst_alpha_dP=" << fmt(worst_alpha) << " worst_c_bound=" << fmt(worst_c)
           << " worst_transfer_dP=" << fmt(worst_transfer);
  return c.finish(8, "rounding-lemmas");
}

CriterionResult mrd_star(Profile profile, const Limits& limits) {
  Check c;
  const int top = profile == Profile::full ? 8 : 5;
  for (int n = 3; n <= top; ++n) {
    const Rational rho = rho_min(n, true, limits).rho;
    const Rational star = rho_star_min(n, limits);
    c.expect(rho / 2 <= star && star <= rho * n, "n=" + std::to_string(n));
    c.detail << "n=" << n << ":" << to_string(rho) << "/" << to_string(star) << " ";
  }
  return c.finish(9, "mrd-star");
}

CriterionResult structure_lemmas(Profile, const Limits& limits) {
  Check c;
  std::mt19937_64 rng(10);
  const int ds[3] = {2, 3, 5};
  int max_gamma = 0;
  for (int t = 0; t < 500; ++t) {
    const int d = ds[t % 3];
    const int target = std::uniform_int_distribution<int>(2, 64)(rng);
    auto mu = oracle::random_dadic(d, target, rng);
    if (mu.is_dirac()) continue;
    const int zeros = std::uniform_int_distribution<int>(0, 3)(rng);
    if (static_cast<int>(mu.size()) + zeros <= 64 && zeros > 0) {
      auto exps = mu.exponents;
      exps.insert(exps.end(), static_cast<std::size_t>(zeros), DAdicDistribution::kZero);
      std::shuffle(exps.begin(), exps.end(), rng);
      mu = DAdicDistribution::from_exponents(d, std::move(exps));
    }
    const int n = static_cast<int>(mu.size());
    const auto bp = block_partition(mu);
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    Rational total = 0;
    for (const auto& blk : bp.blocks) {
      const Rational p = blk.p.value();
      c.expect(static_cast<int>(blk.D.size()) == d * blk.c - blk.r && blk.r >= 0 && blk.r < d, "|D| = dc - r");
      Rational e_mass = 0, d_mass = 0;
      for (int x : blk.D) {
        c.expect(mu.prob(x) == blk.p, "D has probability p");
        d_mass += mu.probability(x);
        ++seen[x];
      }
      for (int x : blk.E) {
        e_mass += mu.probability(x);
        ++seen[x];
      }
      c.expect(e_mass == p * blk.r, "mu(E) = r p");
      c.expect(d_mass + e_mass == p * d * blk.c, "mu(D u E) = d c p");
      total += d_mass + e_mass;
    }
    c.expect(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }), "cover");
    c.expect(total == 1, "total mass");
    c.expect(bp.gamma == static_cast<int>(bp.blocks.size()), "gamma");
    c.expect(bp.gamma <= 2.0 * std::log(static_cast<double>(n)) / std::log(static_cast<double>(d)) + 4.0, "gamma bound");
    max_gamma = std::max(max_gamma, bp.gamma);
  }
  for (int t = 0; t < 500; ++t) {
    const int d = ds[t % 3];
    const auto mu = oracle::random_dadic(d, std::uniform_int_distribution<int>(1, 64)(rng), rng);
    auto exps = mu.exponents;
    std::sort(exps.begin(), exps.end());
    const int a = std::uniform_int_distribution<int>(0, exps.front())(rng);
    const std::size_t m = prefix_split(d, exps, a);
    Rational sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += inverse_power(d, exps[i]);
    c.expect(sum == inverse_power(d, a), "prefix_split exact");
  }
  std::size_t tails = 0;
  for (int n = 3; n <= 10; ++n) {
    enumerate_dadic(n, 2, canonical_full(true, true), [&](const DAdicDistribution& mu) {
      const auto T = tail(mu);
      std::uint32_t mask = 0;
      for (int i : T.indices) mask |= std::uint32_t{1} << i;
      for (std::uint32_t s : oracle::brute_splitting_sets(mu)) {
        c.expect((s & mask) == 0 || (s & mask) == mask, "tail dichotomy " + describe(mu));
      }
      ++tails;
    }, limits);
  }
  c.detail << "partitions=500 max_gamma=" << max_gamma << " prefixes=500 tail_distributions=" << tails;
  return c.finish(10, "structure-lemmas");
}

// Feasible c (b = 1); near draws sum c within 0.9 delta_0 of 2/5, otherwise anywhere in (0.2, 0.6).
std::vector<double> random_perturbation_c(double beta, bool near, double delta0, std::mt19937_64& rng) {
  for (;;) {
    const double x = near ? 0.4 + std::uniform_real_distribution<double>(-0.9, 0.9)(rng) * delta0
                          : std::uniform_real_distribution<double>(0.2, 0.6)(rng);
    const int L = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<double> c(static_cast<std::size_t>(L), 0.0);
    double tail_w = 0.0, tail_m = 0.0;
    for (int i = 2; i < L; ++i) {
      c[i] = std::uniform_real_distribution<double>(0.0, 0.03)(rng);
      tail_w += std::ldexp(c[i], 1 - i);
      tail_m += c[i];
    }
    // 2 c0 + c1 = 1/beta - tail_w and c0 + c1 = x - tail_m.
    c[0] = 1.0 / beta - tail_w - (x - tail_m);
    c[1] = x - tail_m - c[0];
    if (c[0] > 0.0 && c[1] > 0.0) return c;
  }
}

CriterionResult perturbation(Profile, const Limits&) {
  Check c;
  std::mt19937_64 rng(11);
  int strict = 0, near = 0, total = 0;
  for (double beta : {1.5, 1.8, 1.95}) {
    const double delta0 = std::abs(beta - 1.25) / 100.0;
    for (int t = 0; t < 100; ++t) {
      const bool near_case = t % 2 == 0;
      RealAmount a;
      a.b = 1;
      a.beta = beta;
      a.c = random_perturbation_c(beta, near_case, delta0, rng);
      const auto cert = perturbation_gain(a);
      const double uniform = payoff_P(a.c, std::vector<double>(a.c.size(), 0.5));
      const double got = payoff_P(a.c, cert.alpha);
      c.expect(std::abs(feasibility_residual(a, cert.alpha)) <= kFeasTol, "feasible alpha");
      c.expect(std::all_of(cert.alpha.begin(), cert.alpha.end(), [](double v) { return v >= 0.0 && v <= 1.0; }),
               "alpha in [0,1]");
      c.expect(got >= uniform, "P >= P(1/2)");
      if (!cert.far_branch) {
        ++near;
        c.expect(std::abs(cert.eta_S * cert.p_S + cert.eta_T * cert.p_T) <= kFeasTol, "eta balance");
        if (std::abs(cert.lever) > kLeverTol) {
          c.expect(got > uniform, "strict gain");
          ++strict;
        }
      } else {
        c.expect(cert.gain > 0.0, "far branch gain");
      }
      ++total;
    }
  }
  bool rejected = false;
  try {
    RealAmount a;
    a.b = 1;
    a.beta = 1.25;
    a.c = {0.4};
    perturbation_gain(a);
  } catch (const DomainError&) {
    rejected = true;
  }
  c.expect(rejected, "beta = 5/4 precondition");
  c.detail << "instances=" << total << " near_branch=" << near << " strict=" << strict;
  return c.finish(11, "perturbation-certificate");
}

CriterionResult empirical(Profile profile, const Limits& limits) {
  Check c;
  std::vector<int> ks{2, 3};
  if (profile == Profile::full) ks.push_back(4);
  const auto records = empirical_G(Rational(5, 4), ks, limits);
  std::vector<double> gaps;
  for (const auto& r : records) {
    if (r.method != BoundMethod::empirical) continue;
    gaps.push_back(std::abs(r.value + kLog2Magic));
    c.detail << "n=" << r.params.at("n") << ":gap=" << fmt(gaps.back()) << " ";
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) c.expect(gaps[i] < gaps[i - 1], "strictly decreasing");
  return c.finish(12, "empirical-convergence");
}

}  // namespace

CriterionResult run_criterion(int id, Profile profile, const Limits& limits) {
  using Fn = CriterionResult (*)(Profile, const Limits&);
  static constexpr Fn table[kCriteria] = {exact_densities, exact_hitters,      paper_constants,      figure_curves,
                                          dary_constants,  strategy_correctness, verifier_agreement, rounding_lemmas,
                                          mrd_star,        structure_lemmas,   perturbation,         empirical};
  if (id < 1 || id > kCriteria) throw DomainError("criterion id out of range");
  try {
    return table[id - 1](profile, limits);
  } catch (const std::exception& e) {
    CriterionResult r;
    r.id = id;
    r.name = "criterion-" + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

std::vector<CriterionResult> run_all(Profile profile, const Limits& limits) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, profile, limits));
  return out;
}

std::string format_line(const CriterionResult& result) {
  return std::string(result.pass ? "PASS" : "FAIL") + " " + std::to_string(result.id) + " " + result.name + ": " +
         result.detail;
}

}  // namespace qsplit::acceptance
