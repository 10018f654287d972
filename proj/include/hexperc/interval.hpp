#pragma once

namespace hexperc {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  /// True when the two intervals do not overlap.
  bool separated_from(const Interval& o) const noexcept { return hi < o.lo || o.hi < lo; }
};

/// Wilson score interval for a proportion observed over `trials` trials.
/// `trials` may be fractional (effective sample size).
Interval wilson_interval(double proportion, double trials, double z = kZ95) noexcept;

}  // namespace hexperc
