#include "qsplit/gbeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "qsplit/errors.hpp"
#include "qsplit/splitting.hpp"

namespace qsplit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double h(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

struct Max1D {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Grid scan followed by Brent refinement around the best grid point.
template <typename F>
Max1D max1d(F&& f, double lo, double hi, int grid) {
  Max1D best;
  if (!(hi >= lo)) return best;
  if (hi - lo < 1e-15) return Max1D{lo, f(lo)};
  int arg = 0;
  for (int k = 0; k <= grid; ++k) {
    const double x = lo + (hi - lo) * k / grid;
    const double v = f(x);
    if (v > best.value) {
      best = Max1D{x, v};
      arg = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(arg - 1, 0) / grid;
  const double b = lo + (hi - lo) * std::min(arg + 1, grid) / grid;
  const auto refined = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 52);
  if (-refined.second > best.value) best = Max1D{refined.first, -refined.second};
  return best;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

RealAmount RealAmount::from(const AmountSequence& seq) {
  RealAmount out;
  out.b = seq.b;
  out.beta = to_double(seq.beta);
  for (const auto& ci : seq.c) out.c.push_back(to_double(ci));
  return out;
}

double RealAmount::target() const { return 1.0 / (beta * std::ldexp(1.0, b + 1)); }

double RealAmount::mass() const {
  double m = 0.0;
  for (double ci : c) m += ci;
  return m;
}

double payoff_P(const std::vector<double>& c, const std::vector<double>& alpha) {
  double gain = 0.0;
  double chosen = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = i < alpha.size() ? alpha[i] : 0.0;
    gain += h(a) * c[i];
    chosen += a * c[i];
  }
  return gain - h(chosen);
}

double feasibility_residual(const RealAmount& c, const std::vector<double>& alpha) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.c.size() && i < alpha.size(); ++i) sum += alpha[i] * std::ldexp(c.c[i], -static_cast<int>(i));
  return sum - c.target();
}

namespace {

struct Problem {
  std::vector<int> index;  // positions with c_i > 0
  std::vector<double> c;
  std::vector<double> w;   // c_i / 2^i
  double target = 0.0;

  double value(const std::vector<double>& a) const {
    double gain = 0.0;
    double chosen = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      gain += h(a[j]) * c[j];
      chosen += a[j] * c[j];
    }
    return gain - h(chosen);
  }
};

// Exhaustive over faces {0, 1, free}^m for m <= 3.
std::pair<std::vector<double>, double> face_enumeration(const Problem& p) {
  const int m = static_cast<int>(p.c.size());
  int faces = 1;
  for (int j = 0; j < m; ++j) faces *= 3;
  std::vector<double> best_alpha;
  double best = -std::numeric_limits<double>::infinity();
  const double tol = 1e-12 * std::max(1.0, p.target);
  auto consider = [&](const std::vector<double>& a) {
    const double v = p.value(a);
    if (v > best) {
      best = v;
      best_alpha = a;
    }
  };
  for (int code = 0; code < faces; ++code) {
    std::vector<int> kind(static_cast<std::size_t>(m));
    int rest = code;
    for (int j = 0; j < m; ++j) {
      kind[j] = rest % 3;  // 0, 1, or 2 = free
      rest /= 3;
    }
    std::vector<double> a(static_cast<std::size_t>(m), 0.0);
    std::vector<int> free;
    double remaining = p.target;
    for (int j = 0; j < m; ++j) {
      if (kind[j] == 1) {
        a[j] = 1.0;
        remaining -= p.w[j];
      } else if (kind[j] == 2) {
        free.push_back(j);
      }
    }
    if (free.empty()) {
      if (std::abs(remaining) <= tol) consider(a);
    } else if (free.size() == 1) {
      const int i = free[0];
      const double x = remaining / p.w[i];
      if (x >= -1e-12 && x <= 1.0 + 1e-12) {
        a[i] = clamp01(x);
        consider(a);
      }
    } else if (free.size() == 2) {
      const int i = free[0], j = free[1];
      const double lo = std::max(0.0, (remaining - p.w[j]) / p.w[i]);
      const double hi = std::min(1.0, remaining / p.w[i]);
      if (lo > hi) continue;
      auto eval = [&](double x) {
        std::vector<double> t = a;
        t[i] = x;
        t[j] = clamp01((remaining - p.w[i] * x) / p.w[j]);
        return p.value(t);
      };
      const Max1D r = max1d(eval, lo, hi, 2000);
      a[i] = r.x;
      a[j] = clamp01((remaining - p.w[i] * r.x) / p.w[j]);
      consider(a);
    } else {
      const int i = free[0], j = free[1], l = free[2];
      const double lo = std::max(0.0, (remaining - p.w[j] - p.w[l]) / p.w[i]);
      const double hi = std::min(1.0, remaining / p.w[i]);
      if (lo > hi) continue;
      auto inner = [&](double x) {
        const double rem = remaining - p.w[i] * x;
        const double lo2 = std::max(0.0, (rem - p.w[l]) / p.w[j]);
        const double hi2 = std::min(1.0, rem / p.w[j]);
        auto eval = [&](double y) {
          std::vector<double> t = a;
          t[i] = x;
          t[j] = y;
          t[l] = clamp01((rem - p.w[j] * y) / p.w[l]);
          return p.value(t);
        };
        return max1d(eval, lo2, std::max(lo2, hi2), 200);
      };
      const Max1D outer = max1d([&](double x) { return inner(x).value; }, lo, hi, 200);
      const Max1D in = inner(outer.x);
      a[i] = outer.x;
      a[j] = in.x;
      a[l] = clamp01((remaining - p.w[i] * outer.x - p.w[j] * in.x) / p.w[l]);
      consider(a);
    }
  }
  return {best_alpha, best};
}

// Euclidean projection onto {a in [0,1]^m : w.a = target}.
std::vector<double> project(const Problem& p, const std::vector<double>& y) {
  auto at = [&](double tau) {
    double s = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) s += p.w[j] * clamp01(y[j] - tau * p.w[j]);
    return s;
  };
  double lo = -1.0, hi = 1.0;
  while (at(lo) < p.target) lo *= 2.0;
  while (at(hi) > p.target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (at(mid) > p.target ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  std::vector<double> a(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) a[j] = clamp01(y[j] - tau * p.w[j]);
  return a;
}

std::pair<std::vector<double>, double> projected_ascent(const Problem& p, std::vector<double> a) {
  double v = p.value(a);
  double step = 0.1;
  for (int it = 0; it < 5000 && step > 1e-14; ++it) {
    double chosen = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) chosen += a[j] * p.c[j];
    const double A = std::min(1.0 - 1e-15, std::max(1e-15, chosen));
    std::vector<double> y(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double x = std::min(1.0 - 1e-15, std::max(1e-15, a[j]));
      const double grad = p.c[j] * (std::log2((1.0 - x) / x) - std::log2((1.0 - A) / A));
      y[j] = a[j] + step * grad;
    }
    auto next = project(p, y);
    const double nv = p.value(next);
    if (nv > v) {
      const bool tiny = nv - v < 1e-16;
      a = std::move(next);
      v = nv;
      step *= 1.5;
      if (tiny) break;
    } else {
      step *= 0.5;
    }
  }
  return {a, v};
}

}  // namespace

InnerMaxResult inner_max(const RealAmount& amount) {
  Problem p;
  p.target = amount.target();
  double total_w = 0.0;
  for (std::size_t i = 0; i < amount.c.size(); ++i) {
    if (amount.c[i] < 0.0) throw DomainError("negative c_i");
    if (amount.c[i] > 0.0) {
      p.index.push_back(static_cast<int>(i));
      p.c.push_back(amount.c[i]);
      p.w.push_back(std::ldexp(amount.c[i], -static_cast<int>(i)));
      total_w += p.w.back();
    }
  }
  if (p.c.empty() || p.target > total_w * (1.0 + 1e-12)) {
    throw DomainError("alpha constraint is infeasible for this c");
  }
  const std::vector<double> half(p.c.size(), 0.5);
  std::vector<double> best_local = half;
  double best = p.value(half);
  bool certified = false;
  if (p.c.size() <= 3) {
    auto [a, v] = face_enumeration(p);
    certified = true;
    if (v > best) {
      best = v;
      best_local = a;
    }
  } else {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int start = 0; start < 64; ++start) {
      std::vector<double> a0 = half;
      if (start > 0) {
        for (double& x : a0) x = unit(rng);
        a0 = project(p, a0);
      }
      auto [a, v] = projected_ascent(p, a0);
      if (v > best) {
        best = v;
        best_local = a;
      }
    }
  }
  InnerMaxResult out;
  out.alpha.assign(amount.c.size(), 0.0);
  for (std::size_t j = 0; j < p.index.size(); ++j) out.alpha[p.index[j]] = best_local[j];
  out.value = best;
  out.certified = certified;
  return out;
}

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::uniform_alpha: return "uniform_alpha";
    case BoundMethod::single_block: return "single_block";
    case BoundMethod::two_block: return "two_block";
    case BoundMethod::scan: return "scan";
    case BoundMethod::perturbation: return "perturbation";
    case BoundMethod::empirical: return "empirical";
  }
  return "unknown";
}

BoundRecord g_lb_uniform() {
  auto f = [](double x) { return x - h(x / 2.0); };
  const auto r = boost::math::tools::brent_find_minima(f, 0.0, 1.0, 52);
  BoundRecord rec;
  rec.method = BoundMethod::uniform_alpha;
  rec.value = std::min({r.second, f(0.0), f(1.0)});
  rec.params["x"] = r.first;
  rec.beta = kNaN;
  return rec;
}

BoundRecord g_ub_single_block(double beta, int b) {
  if (!(beta >= 1.0 && beta < 2.0)) throw DomainError("beta must lie in [1,2)");
  if (b < 0) throw DomainError("b must be nonnegative");
  const double c0 = 1.0 / (std::ldexp(1.0, b) * beta);
  if (c0 > 1.0) throw DomainError("single block needs 1/(2^b beta) <= 1");
  BoundRecord rec;
  rec.beta = beta;
  rec.b = b;
  rec.method = BoundMethod::single_block;
  rec.value = c0 - h(c0 / 2.0);
  rec.params["c0"] = c0;
  return rec;
}

TwoBlockSolution two_block_solve(double beta, double s) {
  if (!(beta >= 1.0 && beta < 2.0)) throw DomainError("beta must lie in [1,2)");
  TwoBlockSolution sol;
  sol.beta = beta;
  sol.s = s;
  sol.c0 = 1.0 / beta - s;
  sol.c1 = 2.0 * s - 1.0 / beta;
  if (!(sol.c0 > 0.0) || !(sol.c1 > 0.0)) {
    throw DomainError("two-block family needs 1/(2 beta) < s < 1/beta (degenerate block)");
  }
  const double c0 = sol.c0, c1 = sol.c1;
  const double R = 1.0 / (4.0 * beta);
  auto alpha0_of = [&](double a1) { return (R - a1 * c1 / 2.0) / c0; };
  auto value_of = [&](double a1) {
    const double a0 = clamp01(alpha0_of(a1));
    return c0 * h(a0) + c1 * h(a1) - h(a0 * c0 + a1 * c1);
  };
  const double lo = std::max(0.0, (R - c0) / (c1 / 2.0));
  const double hi = std::min(1.0, R / (c1 / 2.0));
  if (lo > hi) throw DomainError("alpha constraint is infeasible");

  auto lg = [](double x) { return std::log((1.0 - x) / x); };
  auto g = [&](double a1) {
    const double a0 = alpha0_of(a1);
    const double A = a0 * c0 + a1 * c1;
    return lg(a0) - 2.0 * lg(a1) + lg(A);
  };

  double best_a1 = lo;
  double best = value_of(lo);
  bool interior = false;
  if (value_of(hi) > best) {
    best = value_of(hi);
    best_a1 = hi;
  }
  const int grid = 4000;
  const double span = hi - lo;
  double prev_x = lo + span * 1e-9;
  double prev_g = g(prev_x);
  for (int k = 1; k <= grid; ++k) {
    const double x = k == grid ? hi - span * 1e-9 : lo + span * k / grid;
    const double gx = g(x);
    if (std::isfinite(prev_g) && std::isfinite(gx) && ((prev_g <= 0.0) != (gx <= 0.0))) {
      std::uintmax_t iters = 200;
      const auto root = boost::math::tools::toms748_solve(
          g, prev_x, x, prev_g, gx, boost::math::tools::eps_tolerance<double>(52), iters);
      const double a1 = 0.5 * (root.first + root.second);
      const double v = value_of(a1);
      if (v >= best) {
        best = v;
        best_a1 = a1;
        interior = true;
      }
    }
    prev_x = x;
    prev_g = gx;
  }
  if (!interior && !(best > -std::numeric_limits<double>::infinity())) throw NumericError("two_block_solve: no root");

  sol.alpha1 = best_a1;
  sol.alpha0 = clamp01(alpha0_of(best_a1));
  sol.value = best;
  sol.is_interior_max = interior;
  const double A = sol.alpha0 * c0 + sol.alpha1 * c1;
  auto dh = [](double x) { return std::log2((1.0 - x) / x); };
  if (interior) {
    sol.lambda = dh(A) - dh(sol.alpha0);
    sol.residuals[0] = c0 * (dh(sol.alpha0) - dh(A)) + sol.lambda * c0;
    sol.residuals[1] = c1 * (dh(sol.alpha1) - dh(A)) + sol.lambda * c1 / 2.0;
  }
  sol.residuals[2] = sol.alpha0 * c0 + sol.alpha1 * c1 / 2.0 - R;
  return sol;
}

namespace {

double min_single_block(double beta) {
  double best = std::numeric_limits<double>::infinity();
  for (int b = 0; b <= 8; ++b) best = std::min(best, g_ub_single_block(beta, b).value);
  return best;
}

// Max of f over a grid of [lo, hi] with Brent refinement; `open` drops the endpoints.
Max1D scan_max(const std::function<double(double)>& f, double lo, double hi, double step, bool open) {
  Max1D best;
  const long steps = std::lround((hi - lo) / step);
  long arg = 0;
  for (long k = open ? 1 : 0; k <= (open ? steps - 1 : steps); ++k) {
    const double x = std::min(hi, lo + k * step);
    const double v = f(x);
    if (v > best.value) {
      best = Max1D{x, v};
      arg = k;
    }
  }
  const double a = std::max(lo, lo + (arg - 1) * step);
  const double b = std::min(hi, lo + (arg + 1) * step);
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 52);
  if (-r.second > best.value) best = Max1D{r.first, -r.second};
  return best;
}

}  // namespace

BoundRecord scan_1236(double s, double step) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const Max1D inside = scan_max([&](double beta) { return two_block_solve(beta, s).value; }, 1.7, 1.95, step, true);
  const double top = std::nextafter(2.0, 1.0);
  const Max1D low = scan_max(min_single_block, 1.0, 1.7, step, false);
  const Max1D high = scan_max(min_single_block, 1.95, top, step, false);
  const Max1D outside = low.value >= high.value ? low : high;

  BoundRecord rec;
  rec.method = BoundMethod::scan;
  rec.b = 1;
  const bool in_wins = inside.value >= outside.value;
  rec.value = in_wins ? inside.value : outside.value;
  rec.beta = in_wins ? inside.x : outside.x;
  rec.params["s"] = s;
  rec.params["step"] = step;
  rec.params["beta_at_max"] = rec.beta;
  rec.params["two_block_max"] = inside.value;
  rec.params["two_block_beta"] = inside.x;
  rec.params["single_block_max"] = outside.value;
  rec.params["single_block_beta"] = outside.x;
  return rec;
}

std::vector<CurveRow> curves(double beta_min, double beta_max, double step, double s) {
  if (!(beta_min >= 1.0 && beta_max < 2.0 && beta_min <= beta_max)) {
    throw DomainError("curve range must lie in [1,2)");
  }
  if (!(step > 0.0)) throw DomainError("step must be positive");
  std::vector<CurveRow> rows;
  const long steps = static_cast<long>(std::floor((beta_max - beta_min) / step + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    CurveRow row;
    row.beta = beta_min + k * step;
    row.single_b1 = g_ub_single_block(row.beta, 1).value;
    row.single_b0 = g_ub_single_block(row.beta, 0).value;
    try {
      row.two_block = two_block_solve(row.beta, s).value;
    } catch (const DomainError&) {
      row.two_block = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

std::pair<int, int> find_s_indices(const RealAmount& c, const std::vector<double>& alpha) {
  const double thr = std::ldexp(1.0, -2 * (c.b + 5));
  const int limit = std::min<int>(static_cast<int>(c.c.size()) - 1, 1 << std::min(c.b + 4, 30));
  int s1 = -1, s2 = -1;
  for (int i = 0; i <= limit; ++i) {
    const double a = i < static_cast<int>(alpha.size()) ? alpha[i] : 0.0;
    if (c.c[i] <= thr) continue;
    if (s1 < 0 && a > thr) s1 = i;
    if (s2 < 0 && a < 0.75) s2 = i;
  }
  if (s1 < 0 || s2 < 0) throw NumericError("find_s_indices: no qualifying index (alpha infeasible for c?)");
  return {s1, s2};
}

PerturbationCertificate perturbation_gain(const RealAmount& c) {
  const double delta_beta = c.beta - 1.25;
  if (delta_beta == 0.0) throw DomainError("perturbation certificate needs beta != 5/4");
  if (c.c.empty()) throw DomainError("empty amount sequence");
  double weighted = 0.0;
  for (std::size_t i = 0; i < c.c.size(); ++i) weighted += std::ldexp(c.c[i], -static_cast<int>(i));
  if (std::abs(weighted - 2.0 * c.target()) > 1e-9) {
    throw DomainError("c violates sum c_i 2^(b-i) beta = 1");
  }
  const double delta0 = std::abs(delta_beta) / 100.0;
  const double x = c.mass();
  const double half_p = c.target();
  const int L = static_cast<int>(c.c.size());

  PerturbationCertificate cert;
  cert.alpha.assign(c.c.size(), 0.5);
  cert.uniform_value = payoff_P(c.c, cert.alpha);
  cert.value = cert.uniform_value;
  cert.eta_0 = std::pow(std::abs(delta_beta), 1.5) / 10.0;
  const double log54 = std::log2(1.25);
  if (std::abs(x - 0.4) >= delta0) {
    cert.far_branch = true;
    cert.gain = cert.value + log54;
    return cert;
  }

  std::vector<double> p_prefix(c.c.size()), q_prefix(c.c.size());
  double p = 0.0, q = 0.0;
  for (int i = 0; i < L; ++i) {
    p += std::ldexp(c.c[i], -i);
    q += c.c[i];
    p_prefix[i] = p;
    q_prefix[i] = q;
  }
  const double p_all = p;
  const double scale = c.beta * std::ldexp(1.0, c.b);
  bool prefix = true;
  int I = 0;
  if (x - 1.0 / scale < 0.0) {
    while (I < L - 1 && p_prefix[I] < half_p) ++I;
  } else {
    for (int i = 0; i < 64; ++i) {
      if (x - std::ldexp(1.0, i) / scale >= 0.0) I = i;
    }
    I = std::min(I, L - 1);
    prefix = p_prefix[I] >= half_p;
  }
  cert.I = I;
  for (int i = 0; i < L; ++i) {
    if ((i <= I) == prefix) cert.S.push_back(i);
  }
  cert.p_S = prefix ? p_prefix[I] : p_all - p_prefix[I];
  cert.q_S = prefix ? q_prefix[I] : x - q_prefix[I];
  cert.p_T = p_all - cert.p_S;
  cert.q_T = x - cert.q_S;
  if (cert.p_S <= 0.0) {
    cert.gain = cert.value + log54;
    return cert;
  }
  cert.lever = x - cert.q_S / (cert.p_S * scale);

  std::vector<bool> in_S(c.c.size(), false);
  for (int i : cert.S) in_S[i] = true;
  auto alpha_for = [&](double eta_T) {
    const double eta_S = -(cert.p_T / cert.p_S) * eta_T;
    std::vector<double> a(c.c.size());
    for (int i = 0; i < L; ++i) a[i] = 0.5 + (in_S[i] ? eta_S : eta_T);
    return a;
  };
  double best_eta = 0.0;
  double best = cert.uniform_value;
  for (double sign : {1.0, -1.0}) {
    auto f = [&](double mag) { return payoff_P(c.c, alpha_for(sign * mag)); };
    const auto r = boost::math::tools::brent_find_minima([&](double m) { return -f(m); }, 0.0, cert.eta_0, 52);
    for (double mag : {r.first, cert.eta_0}) {
      const double v = f(mag);
      if (v > best) {
        best = v;
        best_eta = sign * mag;
      }
    }
  }
  cert.eta_T = best_eta;
  cert.eta_S = -(cert.p_T / cert.p_S) * best_eta;
  cert.alpha = alpha_for(best_eta);
  cert.value = best;
  cert.gain = best + log54;
  return cert;
}

std::vector<BoundRecord> empirical_G(const Rational& beta, const std::vector<int>& ks, const Limits& limits) {
  if (beta < 1 || beta >= 2) throw DomainError("beta must lie in [1,2)");
  std::vector<BoundRecord> out;
  const double beta_d = to_double(beta);
  for (int k : ks) {
    if (k < 0) throw DomainError("k must be nonnegative");
    const Rational n_exact = beta * Rational(ipow(2, k));
    if (boost::multiprecision::denominator(n_exact) != 1) {
      throw DomainError("beta * 2^" + std::to_string(k) + " is not an integer");
    }
    const int n = boost::multiprecision::numerator(n_exact).convert_to<int>();
    const RhoResult r = rho_min(n, true, limits);
    BoundRecord rec;
    rec.beta = beta_d;
    rec.method = BoundMethod::empirical;
    rec.value = log2_rational(r.rho) / n;
    rec.params["k"] = k;
    rec.params["n"] = n;
    out.push_back(rec);
  }
  out.push_back(g_lb_uniform());
  out.back().beta = beta_d;
  for (int b = 0; b <= 1; ++b) out.push_back(g_ub_single_block(beta_d, b));
  return out;
}

}  // namespace qsplit
