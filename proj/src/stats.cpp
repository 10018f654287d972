#include "hexperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hexperc/errors.hpp"
#include "hexperc/format.hpp"

namespace hexperc {

KSample ksample_from_tally(const Tally& t) { return {t.n, t.exact_k, t.samples}; }

ZSample zsample_from_tally(const Tally& t) { return {t.n, t.head_counts(), t.samples}; }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

StepFunction standardized_cdf_from_pmf(int n, const std::vector<double>& pmf, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("standardization needs 0 < p < 1");
  if (n < 1 || pmf.size() != static_cast<std::size_t>(n) + 1) throw ParameterError("pmf must have n+1 atoms");
  const double scale = std::sqrt(static_cast<double>(n)) / std::sqrt(p * (1 - p));
  StepFunction out;
  double total = 0.0;
  for (double w : pmf) total += w;
  if (total <= 0) throw ParameterError("pmf has no mass");
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += pmf[static_cast<std::size_t>(k)];
    out.points.push_back(scale * (static_cast<double>(k) / n - p));
    out.levels.push_back(k == n ? 1.0 : acc / total);
  }
  return out;
}

StepFunction standardized_cdf(const KSample& ks, double p) {
  if (ks.samples == 0) throw ParameterError("empty sample");
  std::vector<double> pmf(ks.counts.begin(), ks.counts.end());
  return standardized_cdf_from_pmf(ks.n, pmf, p);
}

double ks_distance(const StepFunction& step, const std::function<double(double)>& reference) {
  double sup = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < step.points.size(); ++i) {
    const double f = reference(step.points[i]);
    sup = std::max({sup, std::abs(step.levels[i] - f), std::abs(previous - f)});
    previous = step.levels[i];
  }
  return std::max(sup, std::abs(1.0 - previous));
}

double berry_esseen_bound(double p, int n) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("Berry-Esseen bound needs 0 < p < 1");
  if (n < 2) throw ParameterError("Berry-Esseen bound needs n >= 2");
  const double variance = p * (1 - p);
  const double rho = variance * (1 - 2 * p + 2 * p * p);
  return 3 * rho / (std::pow(variance, 1.5) * std::sqrt(static_cast<double>(n - 1)));
}

double binomial_reference(int n, int k, double p) {
  if (k < 0 || k > n) throw ParameterError("binomial reference needs 0 <= k <= n");
  double coeff = 1.0;
  for (int i = 1; i <= k; ++i) coeff = coeff * (n - k + i) / i;
  return coeff * std::pow(p, k) * std::pow(1 - p, n - k);
}

std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf;
  for (int k = 0; k <= n; ++k) pmf.push_back(binomial_reference(n, k, p));
  return pmf;
}

double binomial_ks_reference(int n, double p) { return ks_distance(standardized_cdf_from_pmf(n, binomial_pmf(n, p), p)); }

GapReport fraction_gap(const KSample& ks, const ZSample& zs, double p) {
  (void)p;  // both laws are shifted by the same p; the sup is shift-invariant
  if (ks.samples != zs.samples) throw ParameterError("X and Z samples must come from the same draws");
  if (ks.samples == 0) throw ParameterError("empty sample");
  if (ks.n < 2 || zs.n != ks.n || ks.counts.size() != static_cast<std::size_t>(ks.n) + 1 ||
      zs.counts.size() != static_cast<std::size_t>(ks.n)) {
    throw ParameterError("sample shapes do not match n");
  }
  const auto n = static_cast<std::int64_t>(ks.n);

  // Merge the atoms k/n and j/(n−1) in exact order by cross-multiplying.
  std::int64_t cum_x = 0;
  std::int64_t cum_z = 0;
  std::int64_t sup = 0;
  std::int64_t k = 0;
  std::int64_t j = 0;
  while (k <= n || j <= n - 1) {
    const bool take_x = j > n - 1 || (k <= n && k * (n - 1) <= j * n);
    const bool take_z = k > n || (j <= n - 1 && j * n <= k * (n - 1));
    if (take_x) cum_x += static_cast<std::int64_t>(ks.counts[static_cast<std::size_t>(k++)]);
    if (take_z) cum_z += static_cast<std::int64_t>(zs.counts[static_cast<std::size_t>(j++)]);
    sup = std::max(sup, std::abs(cum_x - cum_z));
  }

  const double N = static_cast<double>(ks.samples);
  GapReport r;
  r.sup_gap = static_cast<double>(sup) / N;
  r.bound = static_cast<double>(*std::max_element(ks.counts.begin(), ks.counts.end())) / N;
  r.tolerance = 3.0 / std::sqrt(N);
  r.holds = r.sup_gap <= r.bound + r.tolerance;
  return r;
}

OrderingReport ordering_check(const std::vector<Tally>& tallies) {
  if (tallies.size() < 2) throw ParameterError("ordering check needs tallies for at least two values of s");
  OrderingReport report;
  for (const auto& t : tallies) {
    const auto e = estimate(t);
    OrderingEntry entry;
    entry.s = t.s;
    entry.n = t.n;
    entry.samples = t.samples;
    entry.b_hat = e.b_hat;
    entry.b_ci = e.b_ci;
    entry.determined = std::any_of(e.b_hat.begin() + 1, e.b_hat.end(), [](double b) { return b > 0; });
    entry.strictly_decreasing = entry.determined;
    entry.separated = entry.determined;
    for (int k = 1; k < t.n; ++k) {
      const auto a = static_cast<std::size_t>(k);
      entry.strictly_decreasing = entry.strictly_decreasing && e.b_hat[a] > e.b_hat[a + 1];
      entry.separated = entry.separated && e.b_hat[a] > e.b_hat[a + 1] && e.b_ci[a].separated_from(e.b_ci[a + 1]);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::string ordering_csv(const OrderingReport& r) {
  std::ostringstream out;
  const int n = r.entries.empty() ? 0 : r.entries.front().n;
  out << "s,n,samples";
  for (int k = 0; k <= n; ++k) out << ",b" << k << ",b" << k << "_lo,b" << k << "_hi";
  out << ",determined,strictly_decreasing,separated\n";
  for (const auto& e : r.entries) {
    out << e.s << ',' << e.n << ',' << e.samples;
    for (std::size_t k = 0; k < e.b_hat.size(); ++k) {
      out << ',' << format_double(e.b_hat[k]) << ',' << format_double(e.b_ci[k].lo) << ','
          << format_double(e.b_ci[k].hi);
    }
    out << ',' << e.determined << ',' << e.strictly_decreasing << ',' << e.separated << '\n';
  }
  return out.str();
}

}  // namespace hexperc
