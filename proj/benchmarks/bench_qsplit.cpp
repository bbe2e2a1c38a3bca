#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qsplit/distributions.hpp"
#include "qsplit/gbeta.hpp"
#include "qsplit/hitters.hpp"
#include "qsplit/splitting.hpp"
#include "qsplit/strategy.hpp"

namespace {

using namespace qsplit;

void BM_RhoMin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rho_min(n));
}
BENCHMARK(BM_RhoMin)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_SplittingCounts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  // Chain 1/2, 1/4, ... closed by a doubled last element.
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = i + 1 < n ? i + 1 : n - 1;
  const auto mu = DAdicDistribution::from_exponents(2, e);
  for (auto _ : state) benchmark::DoNotOptimize(splitting_counts(mu));
}
BENCHMARK(BM_SplittingCounts)->RangeMultiplier(2)->Range(8, 64);

void BM_Huffman(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> w(1, 20);
  std::vector<Rational> pi(n);
  Rational total = 0;
  for (auto& p : pi) total += (p = w(rng));
  for (auto& p : pi) p /= total;
  for (auto _ : state) benchmark::DoNotOptimize(huffman(pi, 2));
}
BENCHMARK(BM_Huffman)->RangeMultiplier(4)->Range(16, 1024);

void BM_ExactMinHitter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_min_hitter(n, 2));
}
BENCHMARK(BM_ExactMinHitter)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_InnerMax(benchmark::State& state) {
  RealAmount c;
  c.b = 1;
  c.beta = 1.80941;
  c.c = {0.138165, 0.276335};
  for (auto _ : state) benchmark::DoNotOptimize(inner_max(c));
}
BENCHMARK(BM_InnerMax)->Unit(benchmark::kMicrosecond);

void BM_Scan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_1236(kScanS, 1e-2));
}
BENCHMARK(BM_Scan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
