#include "hexperc/exact.hpp"

#include <bit>
#include <string>

#include "hexperc/errors.hpp"
#include "hexperc/percolation.hpp"

namespace hexperc {

Rational ExactDistribution::p() const { return Rational(count_subset[1], total); }
Rational ExactDistribution::prob_B(int k) const { return Rational(count_B[static_cast<std::size_t>(k)], total); }
Rational ExactDistribution::prob_subset(std::uint32_t mask) const { return Rational(count_subset[mask], total); }

ExactDistribution exact_distribution(const Lattice& lat, int n, int budget) {
  const ColoringEnumerator space(lat.m(), n, budget);  // validates the budget
  if (n > 20) throw Refusal("exact enumeration supports at most 20 fluids");
  const int m = lat.m();
  const std::uint64_t cell_mask = (std::uint64_t{1} << m) - 1;

  // Every reachable plane is an m-bit word, so tabulate percolation once.
  std::vector<std::uint8_t> percolates(std::size_t{1} << m);
  {
    PercolationChecker checker(lat);
    BitVector plane(static_cast<std::size_t>(m));
    for (std::uint64_t w = 0; w <= cell_mask; ++w) {
      plane.words()[0] = w;
      percolates[w] = checker.percolates(plane) ? 1 : 0;
    }
  }

  std::vector<std::uint64_t> by_flags(std::size_t{1} << n, 0);
  for (std::uint64_t index = 0; index < space.total(); ++index) {
    std::uint32_t flags = 0;
    std::uint64_t last = cell_mask;
    for (int i = 0; i + 1 < n; ++i) {
      const std::uint64_t plane = (index >> (static_cast<unsigned>(i * m))) & cell_mask;
      last ^= plane;
      flags |= static_cast<std::uint32_t>(percolates[plane]) << i;
    }
    flags |= static_cast<std::uint32_t>(percolates[last]) << (n - 1);
    ++by_flags[flags];
  }

  ExactDistribution d;
  d.s = lat.s();
  d.n = n;
  d.m = m;
  d.total = space.total();
  d.count_B.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t f = 0; f < by_flags.size(); ++f) d.count_B[static_cast<std::size_t>(std::popcount(f))] += by_flags[f];
  // Superset sums: count_subset[I] = Σ_{F ⊇ I} by_flags[F].
  std::vector<std::uint64_t> sup = by_flags;
  for (int bit = 0; bit < n; ++bit) {
    for (std::uint32_t f = 0; f < sup.size(); ++f) {
      if (!(f & (1U << bit))) sup[f] += sup[f | (1U << bit)];
    }
  }
  d.count_subset.assign(sup.begin(), sup.end());
  return d;
}

IndependenceReport verify_independence(const ExactDistribution& d) {
  IndependenceReport report;
  report.proper_subsets_factorize = true;
  for (std::uint32_t mask = 1; mask <= d.full_mask(); ++mask) {
    const int size = std::popcount(mask);
    BigInt lhs = d.subset(mask);
    for (int i = 1; i < size; ++i) lhs *= d.total;
    BigInt rhs = 1;
    for (int i = 0; i < d.n; ++i) {
      if (mask & (1U << i)) rhs *= d.subset(1U << i);
    }
    const bool ok = lhs == rhs;
    report.subsets.push_back({mask, size, ok});
    if (size <= d.n - 1 && !ok) report.proper_subsets_factorize = false;
    if (mask == d.full_mask()) report.full_set_factorizes = ok;
  }
  report.joint = d.prob_subset(d.full_mask());
  Rational product = 1;
  for (int i = 0; i < d.n; ++i) product *= d.prob_subset(1U << i);
  report.product = product;
  report.excess = report.joint - product;
  report.ratio = product == 0 ? Rational(0) : report.joint / product;
  return report;
}

MomentReport bernoulli_moments(const Rational& p) {
  MomentReport r;
  const Rational q = 1 - p;
  r.mean = p;
  // Central moments straight from the two-point law {0 w.p. q, 1 w.p. p}.
  r.variance = q * p * p + p * q * q;
  r.abs_third_central = q * p * p * p + p * q * q * q;
  r.closed_variance = p * q;
  r.closed_third = p * q * (1 - 2 * p + 2 * p * p);
  r.matches = r.variance == r.closed_variance && r.abs_third_central == r.closed_third;
  return r;
}

MomentReport moments(const ExactDistribution& d) {
  MomentReport r = bernoulli_moments(d.p());
  Rational second = 0;
  Rational mean = 0;
  for (int k = 0; k <= d.n; ++k) {
    const Rational x(k, d.n);
    mean += x * d.prob_B(k);
    second += x * x * d.prob_B(k);
  }
  r.fraction_variance = second - mean * mean;
  r.fraction_variance_pairwise = r.closed_variance / d.n;
  return r;
}

bool fraction_identity_holds(const ExactDistribution& d) {
  Rational sum = 0;
  for (int k = 1; k <= d.n; ++k) sum += Rational(k, d.n) * d.prob_B(k);
  return sum == d.p();
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigInt alternating_binomial_sum(unsigned k) {
  BigInt sum = 0;
  for (unsigned l = 1; l <= k; ++l) {
    if (l % 2 == 0) {
      sum += binomial(k, l);
    } else {
      sum -= binomial(k, l);
    }
  }
  return sum;
}

std::vector<EmbeddingBound> embedding_bounds(const ExactDistribution& d) {
  const Rational p = d.p();
  const Rational q = 1 - p;
  const BigInt scale = pow2(static_cast<unsigned>(d.m * d.n));
  std::vector<EmbeddingBound> out;
  for (int k = 0; k <= d.n; ++k) {
    Rational term = Rational(binomial(static_cast<unsigned>(d.n), static_cast<unsigned>(k)));
    for (int i = 0; i < k; ++i) term *= p;
    for (int i = k; i < d.n; ++i) term *= q;
    EmbeddingBound b;
    b.k = k;
    b.lhs = d.count_B[static_cast<std::size_t>(k)];
    b.rhs = Rational(scale) * term;
    b.holds = Rational(b.lhs) <= b.rhs;
    out.push_back(std::move(b));
  }
  return out;
}

nlohmann::json exact_report_json(const ExactDistribution& d) {
  using nlohmann::json;
  json j;
  j["s"] = d.s;
  j["n"] = d.n;
  j["m"] = d.m;
  j["total"] = rational_to_json(Rational(d.total))["num"];
  j["p"] = rational_to_json(d.p());

  json b = json::array();
  for (int k = 0; k <= d.n; ++k) {
    b.push_back({{"k", k}, {"count", rational_to_json(Rational(d.count_B[static_cast<std::size_t>(k)]))["num"]},
                 {"probability", rational_to_json(d.prob_B(k))}});
  }
  j["B"] = b;

  json subsets = json::array();
  const auto indep = verify_independence(d);
  for (const auto& sf : indep.subsets) {
    json fluids = json::array();
    for (int i = 0; i < d.n; ++i) {
      if (sf.mask & (1U << i)) fluids.push_back(i + 1);
    }
    subsets.push_back({{"fluids", fluids},
                       {"probability", rational_to_json(d.prob_subset(sf.mask))},
                       {"factorizes", sf.factorizes}});
  }
  j["joint_events"] = subsets;
  j["independence"] = {{"proper_subsets_factorize", indep.proper_subsets_factorize},
                       {"full_set_factorizes", indep.full_set_factorizes},
                       {"joint", rational_to_json(indep.joint)},
                       {"product", rational_to_json(indep.product)},
                       {"excess", rational_to_json(indep.excess)},
                       {"ratio", rational_to_json(indep.ratio)}};

  const auto mom = moments(d);
  j["moments"] = {{"mean", rational_to_json(mom.mean)},
                  {"variance", rational_to_json(mom.variance)},
                  {"abs_third_central", rational_to_json(mom.abs_third_central)},
                  {"closed_variance", rational_to_json(mom.closed_variance)},
                  {"closed_third", rational_to_json(mom.closed_third)},
                  {"matches_closed_forms", mom.matches},
                  {"fraction_variance", rational_to_json(mom.fraction_variance)},
                  {"fraction_variance_pairwise", rational_to_json(mom.fraction_variance_pairwise)}};
  j["fraction_identity_holds"] = fraction_identity_holds(d);

  json bounds = json::array();
  bool all_hold = true;
  for (const auto& eb : embedding_bounds(d)) {
    all_hold = all_hold && eb.holds;
    bounds.push_back({{"k", eb.k}, {"rhs", rational_to_json(eb.rhs)}, {"holds", eb.holds}});
  }
  j["embedding_bounds"] = bounds;
  j["embedding_bounds_hold"] = all_hold;
  return j;
}

}  // namespace hexperc
