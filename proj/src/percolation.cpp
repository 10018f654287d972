#include "hexperc/percolation.hpp"

#include <algorithm>
#include <string>

#include "hexperc/errors.hpp"

namespace hexperc {

PercolationChecker::PercolationChecker(const Lattice& lat)
    : lat_(&lat), visited_((static_cast<std::size_t>(lat.m()) + 63) / 64, 0) {
  stack_.reserve(static_cast<std::size_t>(lat.m()));
}

bool PercolationChecker::percolates(const BitVector& open_mask) {
  const Lattice& lat = *lat_;
  if (open_mask.size() != static_cast<std::size_t>(lat.m())) {
    throw ParameterError("open mask length " + std::to_string(open_mask.size()) + " does not match m = " +
                         std::to_string(lat.m()));
  }
  const auto open = open_mask.words();
  const auto boundary = lat.boundary_mask().words();
  const auto seeds = lat.center_adjacent_mask().words();

  // Quick exits on whole-word masks: an open seed that is already boundary
  // (always the case at s=2), or no open seed at all.
  bool any_seed = false;
  for (std::size_t w = 0; w < open.size(); ++w) {
    const auto live = open[w] & seeds[w];
    if (live & boundary[w]) return true;
    any_seed |= live != 0;
  }
  if (!any_seed) return false;

  std::fill(visited_.begin(), visited_.end(), 0);
  stack_.clear();
  for (CellId c : lat.center_adjacent()) {
    const auto u = static_cast<std::size_t>(c);
    if ((open[u >> 6] >> (u & 63)) & 1U) {
      visited_[u >> 6] |= std::uint64_t{1} << (u & 63);
      stack_.push_back(c);
    }
  }
  while (!stack_.empty()) {
    const CellId c = stack_.back();
    stack_.pop_back();
    for (CellId nb : lat.neighbors(c)) {
      const auto u = static_cast<std::size_t>(nb);
      const std::uint64_t bit = std::uint64_t{1} << (u & 63);
      if (!(open[u >> 6] & bit) || (visited_[u >> 6] & bit)) continue;
      if (boundary[u >> 6] & bit) return true;
      visited_[u >> 6] |= bit;
      stack_.push_back(nb);
    }
  }
  return false;
}

PercolationOutcome PercolationChecker::outcome(const Coloring& c) {
  if (c.m() != lat_->m()) throw ParameterError("coloring cell count does not match lattice");
  if (c.n() > kMaxFluids) throw ParameterError("at most 64 fluids are supported");
  PercolationOutcome out{c.n(), 0};
  for (int i = 0; i < c.n(); ++i) {
    if (percolates(c.plane(i))) out.flags |= std::uint64_t{1} << i;
  }
  return out;
}

bool plane_percolates(const Lattice& lat, const BitVector& open_mask) {
  return PercolationChecker(lat).percolates(open_mask);
}

PercolationOutcome outcome(const Lattice& lat, const Coloring& c) { return PercolationChecker(lat).outcome(c); }

}  // namespace hexperc
