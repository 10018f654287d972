#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hexperc/interval.hpp"
#include "hexperc/montecarlo.hpp"

namespace hexperc {

/// Empirical law of the number of percolating fluids among n.
struct KSample {
  int n = 0;
  std::vector<std::uint64_t> counts;  // k = 0..n
  std::uint64_t samples = 0;
};

/// Same law restricted to the first n−1 fluids; counts has n entries.
struct ZSample {
  int n = 0;
  std::vector<std::uint64_t> counts;  // k = 0..n−1
  std::uint64_t samples = 0;
};

KSample ksample_from_tally(const Tally& t);
ZSample zsample_from_tally(const Tally& t);

/// Right-continuous step CDF: value levels[i] on [points[i], points[i+1]),
/// zero before points[0]. Points strictly increasing.
struct StepFunction {
  std::vector<double> points;
  std::vector<double> levels;
};

/// Standard normal CDF via the complementary error function.
double normal_cdf(double x) noexcept;

/// CDF of √n(k/n − p)/√(p(1−p)) under the empirical k law. Throws
/// ParameterError unless 0 < p < 1.
StepFunction standardized_cdf(const KSample& ks, double p);

/// Same for arbitrary atom masses (k = 0..n, need not be normalized counts).
StepFunction standardized_cdf_from_pmf(int n, const std::vector<double>& pmf, double p);

/// Exact sup |step − reference|, evaluated at each jump with both one-sided
/// limits and at ±∞.
double ks_distance(const StepFunction& step, const std::function<double(double)>& reference = normal_cdf);

/// 3ρ/(σ³√(n−1)) with σ² = p(1−p), ρ = p(1−p)(1−2p+2p²).
double berry_esseen_bound(double p, int n);

/// C(n,k) p^k (1−p)^{n−k}.
double binomial_reference(int n, int k, double p);
std::vector<double> binomial_pmf(int n, double p);

/// KS distance between the standardized Binomial(n, p) law and Φ.
double binomial_ks_reference(int n, double p);

struct GapReport {
  double sup_gap = 0.0;
  double bound = 0.0;      // max_k P̂(B_k)
  double tolerance = 0.0;  // 3/√N
  bool holds = false;
};

/// Sup distance between the empirical CDFs of X̄ − p and Z̄ − p on the merged
/// jump grid. Throws ParameterError when the sample totals differ.
GapReport fraction_gap(const KSample& ks, const ZSample& zs, double p);

struct OrderingEntry {
  int s = 0;
  int n = 0;
  std::uint64_t samples = 0;
  std::vector<double> b_hat;       // k = 0..n
  std::vector<Interval> b_ci;
  bool determined = false;         // some P̂(B_k) > 0 for k >= 1
  bool strictly_decreasing = false;  // P̂(B_1) > ... > P̂(B_n)
  bool separated = false;          // consecutive Wilson intervals disjoint
};

struct OrderingReport {
  std::vector<OrderingEntry> entries;
};

/// Throws ParameterError with fewer than two tallies.
OrderingReport ordering_check(const std::vector<Tally>& tallies);

/// s,n,samples, then b{k},b{k}_lo,b{k}_hi for k = 0..n, then the flags.
std::string ordering_csv(const OrderingReport& r);

}  // namespace hexperc
