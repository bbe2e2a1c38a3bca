#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/limits.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

// Floating-point view of an amount sequence for the optimizers.
struct RealAmount {
  int b = 0;
  double beta = 1.0;
  std::vector<double> c;

  static RealAmount from(const AmountSequence& seq);
  // Right-hand side of the alpha constraint: 1 / (beta 2^(b+1)).
  double target() const;
  double mass() const;  // sum of c_i
};

// sum_i h(alpha_i) c_i - h(sum_i alpha_i c_i); alpha is zero past its end.
double payoff_P(const std::vector<double>& c, const std::vector<double>& alpha);
// sum_i alpha_i c_i / 2^i - 1 / (beta 2^(b+1)).
double feasibility_residual(const RealAmount& c, const std::vector<double>& alpha);

struct InnerMaxResult {
  std::vector<double> alpha;
  double value = 0.0;
  bool certified = false;  // exhaustive face enumeration (at most three positive c_i)
};

InnerMaxResult inner_max(const RealAmount& c);

enum class BoundMethod { uniform_alpha, single_block, two_block, scan, perturbation, empirical };
std::string to_string(BoundMethod method);

struct BoundRecord {
  double beta = 0.0;
  std::optional<int> b;
  BoundMethod method = BoundMethod::uniform_alpha;
  double value = 0.0;
  std::map<std::string, double> params;
};

// min over x in [0,1] of x - h(x/2).
BoundRecord g_lb_uniform();
// 1/(2^b beta) - h(1/(2^(b+1) beta)).
BoundRecord g_ub_single_block(double beta, int b);

struct TwoBlockSolution {
  double s = 0.0;
  double beta = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double lambda = 0.0;
  double value = 0.0;
  bool is_interior_max = false;
  double residuals[3] = {0.0, 0.0, 0.0};
};

// Maximizes P over alpha for c = (1/beta - s, 2s - 1/beta), b = 1.
TwoBlockSolution two_block_solve(double beta, double s);

inline constexpr double kScanS = 0.4145;

// Global upper bound on sup_beta G(beta): two-block values on (1.7, 1.95), single blocks elsewhere.
BoundRecord scan_1236(double s = kScanS, double step = 1e-3);

struct CurveRow {
  double beta = 0.0;
  double single_b1 = 0.0;
  double single_b0 = 0.0;
  double two_block = 0.0;  // NaN where the two-block family is undefined
};

std::vector<CurveRow> curves(double beta_min, double beta_max, double step, double s = kScanS);

// Least indices with c_i > 2^-2(b+5) and alpha_i > 2^-2(b+5) (s1), resp. alpha_i < 3/4 (s2).
std::pair<int, int> find_s_indices(const RealAmount& c, const std::vector<double>& alpha);

struct PerturbationCertificate {
  bool far_branch = false;  // |sum c - 2/5| >= delta_0: alpha = 1/2 already gains
  std::vector<int> S;
  std::optional<int> I;
  double p_S = 0.0, q_S = 0.0, p_T = 0.0, q_T = 0.0;
  double eta_S = 0.0, eta_T = 0.0, eta_0 = 0.0;
  double lever = 0.0;  // x - q_S / (p_S beta 2^b)
  std::vector<double> alpha;
  double value = 0.0;          // P(c, alpha)
  double uniform_value = 0.0;  // P(c, 1/2)
  double gain = 0.0;           // value + log2(5/4)
};

PerturbationCertificate perturbation_gain(const RealAmount& c);

// log2(rho_min(n))/n for n = beta 2^k, followed by the analytic records at the same beta.
std::vector<BoundRecord> empirical_G(const Rational& beta, const std::vector<int>& ks,
                                     const Limits& limits = default_limits());

}  // namespace qsplit
