#pragma once

#include <map>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/limits.hpp"
#include "qsplit/numerics.hpp"

namespace qsplit {

struct DensityEntry {
  BigInt count;
  BigInt denom;
  Rational ratio;
};

// Keys are type vectors (k_1, ..., k_d); for d = 2 the key is (i, n - i).
struct DensityProfile {
  int n = 0;
  int d = 2;
  std::map<std::vector<int>, DensityEntry> entries;

  // Maximum ratio over the recorded types.
  Rational rho() const;
  // Binary convenience: count of splitting sets of size i (0 if absent).
  BigInt count_of_size(int i) const;
};

// |Spl(mu)_i| for every i in [1, n-1] with a nonzero count. Dyadic input only.
DensityProfile splitting_counts(const DAdicDistribution& mu);
Rational max_relative_density(const DAdicDistribution& mu);

// Ordered d-part partitions with every part of mass exactly 1/d, grouped by type.
DensityProfile dividing_counts(const DAdicDistribution& mu);

struct RhoResult {
  Rational rho;
  DAdicDistribution witness;
};

// Minimum over canonical full-support dyadic distributions on n elements. With
// exclude_uniform the all-equal distributions are skipped as well.
RhoResult rho_min(int n, bool exclude_uniform = true, const Limits& limits = default_limits());
// Minimum over contracted amount sequences of the product-of-binomials density.
Rational rho_star_min(int n, const Limits& limits = default_limits());
// Minimum of rho(Div(mu)) over every non-Dirac d-adic distribution on n elements.
RhoResult rho_min_d(int n, int d, const Limits& limits = default_limits());

struct Block {
  std::vector<int> D;
  std::vector<int> E;
  PowerProb p;
  int c = 0;
  int r = 0;
};

struct BlockPartition {
  std::vector<Block> blocks;
  int gamma = 0;
};

// Greedy decomposition into equal-probability runs D_i completed by suffixes E_i of mass r_i p_i.
BlockPartition block_partition(const DAdicDistribution& mu);

}  // namespace qsplit
