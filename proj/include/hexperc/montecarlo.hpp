#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexperc/interval.hpp"
#include "hexperc/lattice.hpp"
#include "hexperc/percolation.hpp"

namespace hexperc {

struct RunConfig {
  int s = 2;
  int n = 2;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  int workers = 1;

  /// Throws ParameterError on s < 2, n < 2 or n > 64, samples < 1, workers < 1.
  void validate() const;
};

/// Mergeable Monte Carlo counters for one (s, n).
///
/// exact_k[k] counts samples where exactly k fluids percolate; exact_k_last[k]
/// counts the subset of those where the last fluid is among them. The pair
/// recovers the law of the count over the first n−1 fluids.
struct Tally {
  int s = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> per_fluid;
  std::vector<std::uint64_t> exact_k;
  std::vector<std::uint64_t> exact_k_last;
  std::uint64_t all_n = 0;

  Tally() = default;
  Tally(int s, int n, std::uint64_t seed = 0);

  void record(const PercolationOutcome& o);
  /// Checks the counter identities; throws std::logic_error on violation.
  void check_invariants() const;
  /// Counts of k percolating among fluids 1..n−1, indexed 0..n−1.
  std::vector<std::uint64_t> head_counts() const;

  friend bool operator==(const Tally&, const Tally&) = default;
};

Tally run(const Lattice& lat, const RunConfig& cfg);

/// Componentwise sum; throws ParameterError on mismatched (s, n).
Tally merge(const Tally& a, const Tally& b);

struct Estimates {
  int s = 0;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double p_hat = 0.0;
  double p_se = 0.0;          // from the empirical variance of k
  double p_effective_trials = 0.0;
  Interval p_ci;
  std::vector<double> b_hat;  // P̂(B_k), k = 0..n
  std::vector<Interval> b_ci;
  double all_hat = 0.0;       // P̂(all n fluids)
  std::optional<double> ratio;  // P̂(all) / p̂^n, empty when p̂ ∈ {0, 1}
  double ratio_se = 0.0;
  Interval ratio_ci;
};

/// Throws ParameterError when t.samples == 0. `z` sets the interval width.
Estimates estimate(const Tally& t, double z = kZ95);

nlohmann::json tally_to_json(const Tally& t);
Tally tally_from_json(const nlohmann::json& j);

std::string estimates_csv_header(int n);
std::string estimates_csv_row(const Estimates& e);

}  // namespace hexperc
