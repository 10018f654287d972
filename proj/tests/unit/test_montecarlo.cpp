#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hexperc/errors.hpp"
#include "hexperc/montecarlo.hpp"

using namespace hexperc;

namespace {

PercolationOutcome flags(int n, std::uint64_t bits) { return {n, bits}; }

}  // namespace

TEST_CASE("wilson interval matches statsmodels") {
  // statsmodels proportion_confint(30, 100, method="wilson")
  const auto ci = wilson_interval(0.3, 100);
  CHECK(ci.lo == doctest::Approx(0.21894885294932756).epsilon(1e-12));
  CHECK(ci.hi == doctest::Approx(0.39584854633346667).epsilon(1e-12));
  const auto zero = wilson_interval(0.0, 50);
  CHECK(zero.lo == doctest::Approx(0.0));
  CHECK(zero.hi == doctest::Approx(0.07134759913335872).epsilon(1e-12));
  CHECK(zero.contains(0.0));
  CHECK(Interval{0, 1}.separated_from(Interval{1.5, 2}));
  CHECK_FALSE(Interval{0, 1}.separated_from(Interval{0.5, 2}));
}

TEST_CASE("run config validation") {
  CHECK_THROWS_AS((RunConfig{1, 2, 10, 0, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((RunConfig{2, 1, 10, 0, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((RunConfig{2, 65, 10, 0, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((RunConfig{2, 2, 0, 0, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((RunConfig{2, 2, 10, 0, 0}.validate()), ParameterError);
  CHECK_NOTHROW((RunConfig{2, 64, 10, 0, 1}.validate()));
}

TEST_CASE("tally counters and hand-computed estimates") {
  Tally t(2, 3, 5);
  t.record(flags(3, 0b111));
  t.record(flags(3, 0b011));
  t.record(flags(3, 0b100));
  t.record(flags(3, 0b000));
  CHECK_NOTHROW(t.check_invariants());
  CHECK(t.samples == 4);
  CHECK(t.per_fluid == std::vector<std::uint64_t>{2, 2, 2});
  CHECK(t.exact_k == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(t.exact_k_last == std::vector<std::uint64_t>{0, 1, 0, 1});
  CHECK(t.all_n == 1);
  // first two fluids: 2, 2, 0, 0 percolating
  CHECK(t.head_counts() == std::vector<std::uint64_t>{2, 0, 2});

  const auto e = estimate(t);
  CHECK(e.p_hat == doctest::Approx(0.5));
  // k = 3, 2, 1, 0: Var k = 1.25; Var p̂ = 1.25 / (9 * 4)
  CHECK(e.p_se == doctest::Approx(std::sqrt(1.25 / 36.0)));
  CHECK(e.b_hat == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(e.all_hat == doctest::Approx(0.25));
  REQUIRE(e.ratio.has_value());
  CHECK(*e.ratio == doctest::Approx(2.0));
  CHECK(e.ratio_ci.contains(2.0));
}

TEST_CASE("degenerate p leaves the ratio empty") {
  Tally t(2, 2);
  t.record(flags(2, 0b11));
  const auto e = estimate(t);
  CHECK(e.p_hat == 1.0);
  CHECK_FALSE(e.ratio.has_value());
  CHECK_THROWS_AS(estimate(Tally(2, 2)), ParameterError);
}

TEST_CASE("invariant checker catches corruption") {
  Tally t(2, 2);
  t.record(flags(2, 0b01));
  t.all_n = 1;
  CHECK_THROWS_AS(t.check_invariants(), std::logic_error);
}

TEST_CASE("results do not depend on the worker count") {
  const auto lat = build_lattice(4);
  const auto one = run(lat, {4, 3, 5000, 99, 1});
  const auto three = run(lat, {4, 3, 5000, 99, 3});
  const auto eight = run(lat, {4, 3, 5000, 99, 8});
  CHECK(one == three);
  CHECK(one == eight);
  CHECK_NOTHROW(one.check_invariants());
  CHECK_FALSE(one == run(lat, {4, 3, 5000, 100, 1}));
}

TEST_CASE("merging split runs equals one run of the union") {
  const auto lat = build_lattice(3);
  const auto a = run(lat, {3, 2, 300, 1, 1});
  const auto b = run(lat, {3, 2, 700, 2, 1});
  const auto m = merge(a, b);
  CHECK(m.samples == 1000);
  CHECK_NOTHROW(m.check_invariants());
  CHECK_THROWS_AS(merge(a, run(lat, {3, 3, 10, 1, 1})), ParameterError);
}

TEST_CASE("s=2 marginal is close to 63/64") {
  const auto lat = build_lattice(2);
  const auto t = run(lat, {2, 2, 200000, 7, 1});
  const auto e = estimate(t);
  CHECK(wilson_interval(e.p_hat, e.p_effective_trials, 5.0).contains(63.0 / 64.0));
  // B_0 is impossible at n = 2 on M_2: the two planes cover every cell.
  CHECK(t.exact_k[0] == 0);
}

TEST_CASE("tally JSON round-trip and CSV layout") {
  const auto lat = build_lattice(3);
  const auto t = run(lat, {3, 3, 500, 4, 1});
  CHECK(tally_from_json(tally_to_json(t)) == t);
  CHECK(estimates_csv_header(3) == "s,n,samples,seed,p_hat,p_lo,p_hi,b0,b1,b2,b3,ratio,ratio_lo,ratio_hi");
  const auto row = estimates_csv_row(estimate(t));
  CHECK(std::count(row.begin(), row.end(), ',') == 13);
  CHECK(row.rfind("3,3,500,4,", 0) == 0);
  auto bad = tally_to_json(t);
  bad["all_n"] = 501;
  CHECK_THROWS(tally_from_json(bad));
}
