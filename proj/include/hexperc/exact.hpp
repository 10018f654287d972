#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hexperc/lattice.hpp"
#include "hexperc/rational.hpp"
#include "hexperc/sampling.hpp"

namespace hexperc {

/// Exact event counts over the full coloring space of a tiny instance.
/// Subsets of fluids are bit masks; bit i stands for fluid i.
struct ExactDistribution {
  int s = 0;
  int n = 0;
  int m = 0;
  BigInt total;
  std::vector<BigInt> count_B;       // exactly k fluids percolate, k = 0..n
  std::vector<BigInt> count_subset;  // every fluid of the mask percolates, indexed by mask

  const BigInt& subset(std::uint32_t mask) const { return count_subset[mask]; }
  std::uint32_t full_mask() const noexcept { return (std::uint32_t{1} << n) - 1; }

  Rational p() const;  // single-fluid marginal, from fluid 0
  Rational prob_B(int k) const;
  Rational prob_subset(std::uint32_t mask) const;
};

/// Full enumeration; throws Refusal when (n−1)·m exceeds budget.
ExactDistribution exact_distribution(const Lattice& lat, int n, int budget = kDefaultEnumerationBudget);

struct SubsetFactorization {
  std::uint32_t mask = 0;
  int size = 0;
  bool factorizes = false;
};

struct IndependenceReport {
  std::vector<SubsetFactorization> subsets;  // every nonempty mask, ascending
  bool proper_subsets_factorize = false;     // all masks with |I| <= n−1
  bool full_set_factorizes = false;
  Rational joint;        // P(all n percolate)
  Rational product;      // p^n
  Rational excess;       // joint − product
  Rational ratio;        // joint / product; zero when product is zero
};

/// For |I| <= n−1 checks count(I)·total^{|I|−1} = Π count({i}) as exact integers.
IndependenceReport verify_independence(const ExactDistribution& d);

struct MomentReport {
  Rational mean;
  Rational variance;
  Rational abs_third_central;
  Rational closed_variance;      // p(1−p)
  Rational closed_third;         // p(1−p)(1−2p+2p²)
  bool matches = false;
  Rational fraction_variance;    // Var of the fraction of percolating fluids
  Rational fraction_variance_pairwise;  // p(1−p)/n
};

/// Moments of one fluid indicator computed from the exact counts, compared
/// with their closed forms.
MomentReport moments(const ExactDistribution& d);
/// Same closed-form comparison for an arbitrary probability.
MomentReport bernoulli_moments(const Rational& p);

/// p = Σ_k (k/n) P(B_k); for n = 2 this is p = P(B_2) + ½ P(B_1).
bool fraction_identity_holds(const ExactDistribution& d);

struct EmbeddingBound {
  int k = 0;
  BigInt lhs;    // 2^{m(n−1)} P(B_k), i.e. count_B[k]
  Rational rhs;  // 2^{mn} C(n,k) p^k (1−p)^{n−k}
  bool holds = false;
};

std::vector<EmbeddingBound> embedding_bounds(const ExactDistribution& d);

BigInt binomial(unsigned n, unsigned k);

/// Σ_{l=1..k} (−1)^l C(k, l); −1 for every k >= 1.
BigInt alternating_binomial_sum(unsigned k);

nlohmann::json exact_report_json(const ExactDistribution& d);

}  // namespace hexperc
