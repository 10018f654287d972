#include <doctest.h>

#include <cmath>
#include <random>

#include "hexperc/errors.hpp"
#include "hexperc/stats.hpp"

using namespace hexperc;

namespace {

// Composite Simpson on the standard normal density from −10 to x.
double simpson_phi(double x) {
  const double a = -10.0;
  const int steps = 20000;
  const double h = (x - a) / steps;
  const auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
  double sum = pdf(a) + pdf(x);
  for (int i = 1; i < steps; ++i) sum += pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

Tally tally_with(int n, const std::vector<std::uint64_t>& exact_k) {
  Tally t(10, n);
  for (std::size_t k = 0; k < exact_k.size(); ++k) {
    for (std::uint64_t i = 0; i < exact_k[k]; ++i) t.record({n, (std::uint64_t{1} << k) - 1});
  }
  return t;
}

}  // namespace

TEST_CASE("normal cdf against quadrature") {
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    CAPTURE(x);
    CHECK(std::abs(normal_cdf(x) - simpson_phi(x)) < 1e-7);
  }
  // scipy.stats.norm.cdf
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
  CHECK(normal_cdf(-3.5) == doctest::Approx(0.00023262907903552502).epsilon(1e-10));
  CHECK(normal_cdf(0.0) == 0.5);
}

TEST_CASE("binomial KS reference against scipy") {
  CHECK(std::abs(binomial_ks_reference(25, 0.8) - 0.11668941177936942) < 1e-9);
  CHECK(std::abs(binomial_ks_reference(4, 0.5) - 0.1875) < 1e-9);
  CHECK(std::abs(binomial_ks_reference(9, 0.3) - 0.15751641059044175) < 1e-9);
  double total = 0.0;
  for (double w : binomial_pmf(25, 0.8)) total += w;
  CHECK(total == doctest::Approx(1.0));
  CHECK(binomial_reference(4, 2, 0.5) == doctest::Approx(0.375));
}

TEST_CASE("ks_distance on hand-built steps") {
  // one atom at 0: sup is 1/2 from either side
  CHECK(ks_distance({{0.0}, {1.0}}) == doctest::Approx(0.5));
  // the identity-like reference picks up both one-sided limits
  const auto ref = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance({{0.5}, {1.0}}, ref) == doctest::Approx(0.5));
  CHECK(ks_distance({{0.2, 0.9}, {0.3, 1.0}}, ref) == doctest::Approx(0.6));
}

TEST_CASE("standardized cdf") {
  KSample ks{2, {1, 2, 1}, 4};
  const auto f = standardized_cdf(ks, 0.5);
  REQUIRE(f.points.size() == 3);
  CHECK(f.points[0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(f.points[1] == doctest::Approx(0.0));
  CHECK(f.levels == std::vector<double>{0.25, 0.75, 1.0});
  CHECK_THROWS_AS(standardized_cdf(ks, 0.0), ParameterError);
  CHECK_THROWS_AS(standardized_cdf(ks, 1.0), ParameterError);
  const auto g = standardized_cdf_from_pmf(2, {0.25, 0.5, 0.25}, 0.5);
  CHECK(ks_distance(f) == doctest::Approx(ks_distance(g)));
}

TEST_CASE("berry-esseen bound") {
  CHECK(berry_esseen_bound(0.5, 2) == doctest::Approx(3.0));
  CHECK(berry_esseen_bound(0.5, 5) == doctest::Approx(1.5));
  CHECK(berry_esseen_bound(0.8, 25) > binomial_ks_reference(25, 0.8));
}

TEST_CASE("samples from tallies") {
  Tally t(4, 3);
  t.record({3, 0b111});
  t.record({3, 0b011});
  t.record({3, 0b100});
  const auto ks = ksample_from_tally(t);
  const auto zs = zsample_from_tally(t);
  CHECK(ks.counts == std::vector<std::uint64_t>{0, 1, 1, 1});
  CHECK(zs.counts == std::vector<std::uint64_t>{1, 0, 2});
  CHECK(ks.samples == 3);
  CHECK(zs.samples == 3);
}

TEST_CASE("fraction gap by brute force on random laws") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 9;
    Tally t(5, n);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    for (int i = 0; i < 50; ++i) t.record({n, pick(rng)});
    const auto ks = ksample_from_tally(t);
    const auto zs = zsample_from_tally(t);
    const auto gap = fraction_gap(ks, zs, 0.5);
    // Oracle: evaluate both CDFs on a fine grid of rationals a/(n(n−1)).
    double sup = 0.0;
    const int grid = n * (n - 1);
    for (int a = 0; a <= grid; ++a) {
      double fx = 0.0, fz = 0.0;
      for (int k = 0; k <= n; ++k) {
        if (k * (n - 1) <= a) fx += static_cast<double>(ks.counts[static_cast<std::size_t>(k)]);
      }
      for (int j = 0; j < n; ++j) {
        if (j * n <= a) fz += static_cast<double>(zs.counts[static_cast<std::size_t>(j)]);
      }
      sup = std::max(sup, std::abs(fx - fz) / 50.0);
    }
    CHECK(gap.sup_gap == doctest::Approx(sup));
    CHECK(gap.holds);
    CHECK(gap.tolerance == doctest::Approx(3.0 / std::sqrt(50.0)));
  }
  KSample ks{3, {1, 1, 1, 1}, 4};
  ZSample zs{3, {1, 1, 1}, 3};
  CHECK_THROWS_AS(fraction_gap(ks, zs, 0.5), ParameterError);
}

TEST_CASE("ordering check") {
  std::vector<Tally> tallies{tally_with(3, {0, 5000, 3000, 1000}), tally_with(3, {100, 300, 300, 9000})};
  const auto r = ordering_check(tallies);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].strictly_decreasing);
  CHECK(r.entries[0].separated);
  CHECK(r.entries[0].determined);
  CHECK_FALSE(r.entries[1].strictly_decreasing);
  CHECK_FALSE(r.entries[1].separated);
  CHECK_THROWS_AS(ordering_check({tallies[0]}), ParameterError);
  const auto csv = ordering_csv(r);
  CHECK(csv.rfind("s,n,samples,b0,b0_lo,b0_hi", 0) == 0);
}
