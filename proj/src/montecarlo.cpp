#include "hexperc/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hexperc/errors.hpp"
#include "hexperc/format.hpp"
#include "hexperc/rng.hpp"
#include "hexperc/sampling.hpp"

namespace hexperc {

void RunConfig::validate() const {
  if (s < 2) throw ParameterError("s must be >= 2, got " + std::to_string(s));
  if (n < 2 || n > kMaxFluids) throw ParameterError("n must be in [2, 64], got " + std::to_string(n));
  if (samples < 1) throw ParameterError("samples must be >= 1");
  if (workers < 1) throw ParameterError("workers must be >= 1, got " + std::to_string(workers));
}

Tally::Tally(int s_, int n_, std::uint64_t seed_)
    : s(s_), n(n_), seed(seed_), per_fluid(static_cast<std::size_t>(n_), 0),
      exact_k(static_cast<std::size_t>(n_) + 1, 0), exact_k_last(static_cast<std::size_t>(n_) + 1, 0) {}

void Tally::record(const PercolationOutcome& o) {
  ++samples;
  const int k = o.k();
  ++exact_k[static_cast<std::size_t>(k)];
  if (o.percolates(n - 1)) ++exact_k_last[static_cast<std::size_t>(k)];
  if (k == n) ++all_n;
  for (std::uint64_t f = o.flags; f != 0; f &= f - 1) ++per_fluid[static_cast<std::size_t>(std::countr_zero(f))];
}

void Tally::check_invariants() const {
  const auto fail = [](const char* what) { throw std::logic_error(std::string("tally invariant: ") + what); };
  if (per_fluid.size() != static_cast<std::size_t>(n) || exact_k.size() != static_cast<std::size_t>(n) + 1 ||
      exact_k_last.size() != exact_k.size()) {
    fail("counter sizes");
  }
  if (std::accumulate(exact_k.begin(), exact_k.end(), std::uint64_t{0}) != samples) fail("sum of exact_k != samples");
  if (all_n != exact_k.back()) fail("all_n != exact_k[n]");
  std::uint64_t weighted = 0;
  for (std::size_t k = 0; k < exact_k.size(); ++k) {
    weighted += k * exact_k[k];
    if (exact_k_last[k] > exact_k[k]) fail("exact_k_last exceeds exact_k");
  }
  std::uint64_t fluid_total = 0;
  for (auto c : per_fluid) {
    if (c > samples) fail("per_fluid exceeds samples");
    fluid_total += c;
  }
  if (fluid_total != weighted) fail("sum of per_fluid != sum of k * exact_k");
  if (exact_k_last[0] != 0 || exact_k_last.back() != exact_k.back()) fail("exact_k_last endpoints");
  if (std::accumulate(exact_k_last.begin(), exact_k_last.end(), std::uint64_t{0}) != per_fluid.back()) {
    fail("sum of exact_k_last != per_fluid[n-1]");
  }
}

std::vector<std::uint64_t> Tally::head_counts() const {
  std::vector<std::uint64_t> head(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < exact_k.size(); ++k) {
    const auto with_last = exact_k_last[k];
    const auto without_last = exact_k[k] - with_last;
    if (k >= 1) head[k - 1] += with_last;
    if (k < head.size()) head[k] += without_last;
  }
  return head;
}

Tally merge(const Tally& a, const Tally& b) {
  if (a.s != b.s || a.n != b.n) {
    throw ParameterError("cannot merge tallies for (s, n) = (" + std::to_string(a.s) + ", " + std::to_string(a.n) +
                         ") and (" + std::to_string(b.s) + ", " + std::to_string(b.n) + ")");
  }
  Tally out = a;
  out.samples += b.samples;
  out.all_n += b.all_n;
  for (std::size_t i = 0; i < out.per_fluid.size(); ++i) out.per_fluid[i] += b.per_fluid[i];
  for (std::size_t k = 0; k < out.exact_k.size(); ++k) {
    out.exact_k[k] += b.exact_k[k];
    out.exact_k_last[k] += b.exact_k_last[k];
  }
  return out;
}

namespace {

void run_range(const Lattice& lat, const RunConfig& cfg, std::uint64_t begin, std::uint64_t end, Tally& out) {
  ColoringSampler sampler(lat.m(), cfg.n);
  PercolationChecker checker(lat);
  for (std::uint64_t i = begin; i < end; ++i) {
    RngStream rng(cfg.seed, i);
    out.record(checker.outcome(sampler.draw(rng)));
  }
}

}  // namespace

Tally run(const Lattice& lat, const RunConfig& cfg) {
  cfg.validate();
  if (cfg.s != lat.s()) throw ParameterError("run config s does not match lattice");
  const auto workers = static_cast<std::uint64_t>(cfg.workers);
  std::vector<Tally> partial(workers, Tally(cfg.s, cfg.n, cfg.seed));
  const auto bound = [&](std::uint64_t w) { return cfg.samples / workers * w + std::min(w, cfg.samples % workers); };
  if (workers == 1) {
    run_range(lat, cfg, 0, cfg.samples, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { run_range(lat, cfg, bound(w), bound(w + 1), partial[w]); });
    }
  }
  Tally total(cfg.s, cfg.n, cfg.seed);
  for (const auto& t : partial) total = merge(total, t);
  return total;
}

Interval wilson_interval(double proportion, double trials, double z) noexcept {
  if (trials <= 0) return {0.0, 1.0};
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double centre = (proportion + z2 / (2 * trials)) / denom;
  const double half = z * std::sqrt(proportion * (1 - proportion) / trials + z2 / (4 * trials * trials)) / denom;
  // at 0 or 1 the matching endpoint is exact; rounding would leave it off by ~1e-17
  const double lo = proportion <= 0.0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = proportion >= 1.0 ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

Estimates estimate(const Tally& t, double z) {
  if (t.samples == 0) throw ParameterError("cannot estimate from an empty tally");
  Estimates e;
  e.s = t.s;
  e.n = t.n;
  e.samples = t.samples;
  e.seed = t.seed;
  const double N = static_cast<double>(t.samples);
  const double n = t.n;

  double mean_k = 0.0;
  for (std::size_t k = 0; k < t.exact_k.size(); ++k) mean_k += static_cast<double>(k) * static_cast<double>(t.exact_k[k]);
  mean_k /= N;
  double var_k = 0.0;
  for (std::size_t k = 0; k < t.exact_k.size(); ++k) {
    const double d = static_cast<double>(k) - mean_k;
    var_k += d * d * static_cast<double>(t.exact_k[k]);
  }
  var_k /= N;

  const double p = mean_k / n;
  e.p_hat = p;
  const double var_p = var_k / (n * n * N);
  e.p_se = std::sqrt(var_p);
  // Effective trial count so that the Wilson interval carries the empirical
  // variance of the pooled indicators; capped at the indicator count.
  const double pooled = n * N;
  e.p_effective_trials = (var_p > 0 && p > 0 && p < 1) ? std::min(pooled, p * (1 - p) / var_p) : pooled;
  e.p_ci = wilson_interval(p, e.p_effective_trials, z);

  for (std::size_t k = 0; k < t.exact_k.size(); ++k) {
    const double b = static_cast<double>(t.exact_k[k]) / N;
    e.b_hat.push_back(b);
    e.b_ci.push_back(wilson_interval(b, N, z));
  }
  const double q = static_cast<double>(t.all_n) / N;
  e.all_hat = q;
  if (p > 0 && p < 1) {
    const double pn = std::pow(p, n);
    const double r = q / pn;
    // Delta method on r = q / p^n with per-sample a = [k == n], b = k / n;
    // cov(a, b) = q (1 − p) since a = 1 forces b = 1.
    const double var_q = q * (1 - q) / N;
    const double cov = q * (1 - p) / N;
    const double dq = 1.0 / pn;
    const double dp = -n * q / (pn * p);
    const double var_r = std::max(0.0, dq * dq * var_q + dp * dp * var_p + 2 * dq * dp * cov);
    e.ratio = r;
    e.ratio_se = std::sqrt(var_r);
    e.ratio_ci = {r - z * e.ratio_se, r + z * e.ratio_se};
  } else {
    const double nan = std::nan("");
    e.ratio_ci = {nan, nan};
    e.ratio_se = nan;
  }
  return e;
}

nlohmann::json tally_to_json(const Tally& t) {
  return {{"s", t.s},
          {"n", t.n},
          {"seed", t.seed},
          {"samples", t.samples},
          {"per_fluid", t.per_fluid},
          {"exact_k", t.exact_k},
          {"exact_k_last", t.exact_k_last},
          {"all_n", t.all_n}};
}

Tally tally_from_json(const nlohmann::json& j) {
  Tally t(j.at("s").get<int>(), j.at("n").get<int>(), j.at("seed").get<std::uint64_t>());
  t.samples = j.at("samples").get<std::uint64_t>();
  t.per_fluid = j.at("per_fluid").get<std::vector<std::uint64_t>>();
  t.exact_k = j.at("exact_k").get<std::vector<std::uint64_t>>();
  t.exact_k_last = j.at("exact_k_last").get<std::vector<std::uint64_t>>();
  t.all_n = j.at("all_n").get<std::uint64_t>();
  t.check_invariants();
  return t;
}

std::string estimates_csv_header(int n) {
  std::ostringstream out;
  out << "s,n,samples,seed,p_hat,p_lo,p_hi";
  for (int k = 0; k <= n; ++k) out << ",b" << k;
  out << ",ratio,ratio_lo,ratio_hi";
  return out.str();
}

std::string estimates_csv_row(const Estimates& e) {
  std::ostringstream out;
  out << e.s << ',' << e.n << ',' << e.samples << ',' << e.seed << ',' << format_double(e.p_hat) << ','
      << format_double(e.p_ci.lo) << ',' << format_double(e.p_ci.hi);
  for (double b : e.b_hat) out << ',' << format_double(b);
  out << ',' << format_double(e.ratio.value_or(std::nan(""))) << ',' << format_double(e.ratio_ci.lo) << ','
      << format_double(e.ratio_ci.hi);
  return out.str();
}

}  // namespace hexperc
