#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "hexperc/bits.hpp"
#include "hexperc/lattice.hpp"
#include "hexperc/sampling.hpp"

namespace hexperc {

inline constexpr int kMaxFluids = 64;

/// Bit i of `flags` set iff fluid i percolates from the center to the boundary.
struct PercolationOutcome {
  int n = 0;
  std::uint64_t flags = 0;

  int k() const noexcept { return std::popcount(flags); }
  bool percolates(int i) const noexcept { return (flags >> i) & 1U; }

  friend bool operator==(const PercolationOutcome&, const PercolationOutcome&) = default;
};

/// Reachability search over open cells, seeded from the open neighbors of O.
/// Owns scratch buffers so repeated calls do not allocate; not thread-safe,
/// use one per worker.
class PercolationChecker {
public:
  explicit PercolationChecker(const Lattice& lat);

  bool percolates(const BitVector& open_mask);
  PercolationOutcome outcome(const Coloring& c);

private:
  const Lattice* lat_;
  std::vector<std::uint64_t> visited_;
  std::vector<CellId> stack_;
};

bool plane_percolates(const Lattice& lat, const BitVector& open_mask);
PercolationOutcome outcome(const Lattice& lat, const Coloring& c);

}  // namespace hexperc
