#include "hexperc/pathsum.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hexperc/errors.hpp"
#include "hexperc/sampling.hpp"

namespace hexperc {

namespace {

void require_mask_width(const CellGraph& g) {
  if (g.cell_count() > kMaxMaskCells) {
    throw Refusal("graph has " + std::to_string(g.cell_count()) + " cells; path-set sums support at most 64");
  }
}

/// Calls visit(path) for every simple source→target path; stops early and
/// returns false when visit returns false.
template <typename Visit>
bool walk_paths(const CellGraph& g, Visit&& visit) {
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(g.cell_count()), 0);
  std::vector<std::size_t> next_edge;

  for (int start : g.sources()) {
    path.assign(1, start);
    next_edge.assign(1, 0);
    on_path[static_cast<std::size_t>(start)] = 1;
    if (g.is_target(start) && !visit(path)) return false;
    while (!path.empty()) {
      const int cur = path.back();
      const auto& nbrs = g.neighbors(cur);
      auto& idx = next_edge.back();
      while (idx < nbrs.size() && on_path[static_cast<std::size_t>(nbrs[idx])]) ++idx;
      if (idx == nbrs.size()) {
        on_path[static_cast<std::size_t>(cur)] = 0;
        path.pop_back();
        next_edge.pop_back();
        continue;
      }
      const int nb = nbrs[idx++];
      path.push_back(nb);
      next_edge.push_back(0);
      on_path[static_cast<std::size_t>(nb)] = 1;
      if (g.is_target(nb) && !visit(path)) return false;
    }
  }
  return true;
}

std::vector<CellMask> path_masks_within(const CellGraph& g, unsigned max_paths, std::uint64_t subset_cap,
                                        unsigned paths_per_term) {
  require_mask_width(g);
  std::vector<CellMask> masks;
  std::uint64_t total = 0;
  walk_paths(g, [&](const std::vector<int>& cells) {
    ++total;
    if (masks.size() <= max_paths) {
      CellMask mask = 0;
      for (int c : cells) mask |= CellMask{1} << c;
      masks.push_back(mask);
    }
    return total <= kDefaultPathCap;
  });
  if (masks.size() > max_paths) {
    const std::string count = total > kDefaultPathCap ? "more than " + std::to_string(kDefaultPathCap)
                                                       : std::to_string(total);
    const std::string exponent = paths_per_term == 1 ? count : "(" + std::to_string(paths_per_term) + "*" + count + ")";
    throw Refusal("subset sum refused: graph has " + count + " paths, and 2^" + exponent +
                  " family terms exceed the subset cap of " + std::to_string(subset_cap));
  }
  return masks;
}

unsigned max_paths_for_cap(std::uint64_t subset_cap, unsigned paths_per_term) {
  if (subset_cap < 2) return 0;
  const auto log2cap = static_cast<unsigned>(std::bit_width(subset_cap) - 1);
  return std::min(log2cap / paths_per_term, 62U / paths_per_term);
}

/// Σ_e hist[e] · 2^{scale−e}, negated, over 2^scale.
Rational signed_histogram_sum(const std::vector<std::int64_t>& hist, unsigned scale) {
  BigInt numerator = 0;
  for (std::size_t e = 0; e < hist.size(); ++e) {
    if (hist[e] != 0) numerator += BigInt(hist[e]) << (scale - static_cast<unsigned>(e));
  }
  return Rational(-numerator, pow2(scale));
}

}  // namespace

std::vector<Path> enumerate_paths(const CellGraph& g, std::uint64_t cap) {
  if (cap < 1) throw ParameterError("path cap must be >= 1");
  std::vector<Path> out;
  const bool complete = walk_paths(g, [&](const std::vector<int>& cells) {
    if (out.size() >= cap) return false;
    out.push_back(Path{cells});
    return true;
  });
  if (!complete) {
    throw Refusal("path enumeration overflow: more than " + std::to_string(cap) + " simple paths (reached " +
                  std::to_string(out.size() + 1) + ")");
  }
  return out;
}

std::uint64_t count_paths(const CellGraph& g, std::uint64_t cap) {
  std::uint64_t count = 0;
  const bool complete = walk_paths(g, [&](const std::vector<int>&) { return ++count <= cap; });
  if (!complete) throw Refusal("path enumeration overflow: more than " + std::to_string(cap) + " simple paths");
  return count;
}

bool is_valid_path(const CellGraph& g, const Path& p) {
  if (p.cells.empty()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.cell_count()), 0);
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const int c = p.cells[i];
    if (c < 0 || c >= g.cell_count() || seen[static_cast<std::size_t>(c)]) return false;
    seen[static_cast<std::size_t>(c)] = 1;
    if (i > 0) {
      const auto& nb = g.neighbors(p.cells[i - 1]);
      if (!std::binary_search(nb.begin(), nb.end(), c)) return false;
    }
  }
  return g.is_source(p.cells.front()) && g.is_target(p.cells.back());
}

CellMask path_mask(const Path& p) {
  CellMask mask = 0;
  for (int c : p.cells) mask |= CellMask{1} << c;
  return mask;
}

Rational single_fluid_sum(const CellGraph& g, std::uint64_t subset_cap) {
  const auto masks = path_masks_within(g, max_paths_for_cap(subset_cap, 1), subset_cap, 1);
  const auto P = masks.size();
  const auto cells = static_cast<std::size_t>(g.cell_count());

  std::vector<std::vector<int>> path_cells(P);
  for (std::size_t i = 0; i < P; ++i) {
    for (CellMask m = masks[i]; m != 0; m &= m - 1) path_cells[i].push_back(std::countr_zero(m));
  }

  // Gray-code walk over families: one path toggles per step, and per-cell
  // cover counts keep |S| current.
  std::vector<std::int64_t> hist(cells + 1, 0);
  std::vector<std::uint32_t> cover(cells, 0);
  std::vector<char> member(P, 0);
  std::size_t union_size = 0;
  std::size_t family_size = 0;
  const std::uint64_t families = std::uint64_t{1} << P;
  for (std::uint64_t step = 1; step < families; ++step) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(step));
    if (member[flip]) {
      member[flip] = 0;
      --family_size;
      for (int c : path_cells[flip]) union_size -= (--cover[static_cast<std::size_t>(c)] == 0);
    } else {
      member[flip] = 1;
      ++family_size;
      for (int c : path_cells[flip]) union_size += (cover[static_cast<std::size_t>(c)]++ == 0);
    }
    hist[union_size] += (family_size % 2 == 0) ? 1 : -1;
  }
  return signed_histogram_sum(hist, static_cast<unsigned>(cells));
}

CoveragePartition partition_T(CellMask u1, CellMask u2, CellMask u3, int m) {
  if (m < 0 || m > kMaxMaskCells) throw ParameterError("mask width must be in [0, 64]");
  const CellMask all = m == 64 ? ~CellMask{0} : (CellMask{1} << m) - 1;
  if ((u1 | u2 | u3) & ~all) throw ParameterError("cover mask has bits beyond the cell count");
  CoveragePartition out;
  out.multiple = (u1 & u2) | (u1 & u3) | (u2 & u3);
  out.once = (u1 | u2 | u3) & ~out.multiple;
  out.uncovered = all & ~(u1 | u2 | u3);
  return out;
}

Rational triple_fluid_sum(const CellGraph& g, std::uint64_t subset_cap) {
  const auto masks = path_masks_within(g, max_paths_for_cap(subset_cap, 3), subset_cap, 3);
  const auto P = masks.size();
  const auto cells = static_cast<std::size_t>(g.cell_count());

  const std::size_t families = std::size_t{1} << P;
  std::vector<CellMask> unions(families, 0);
  for (std::size_t f = 1; f < families; ++f) {
    unions[f] = unions[f & (f - 1)] | masks[static_cast<std::size_t>(std::countr_zero(f))];
  }

  // Histogram over e = |T1| + 2|T_{2-3}|, the power of 1/2 in each term.
  std::vector<std::int64_t> hist(2 * cells + 1, 0);
  for (std::size_t a = 1; a < families; ++a) {
    const CellMask ua = unions[a];
    for (std::size_t b = 1; b < families; ++b) {
      const CellMask ub = unions[b];
      const CellMask both = ua & ub;
      const CellMask either = ua | ub;
      const int parity_ab = std::popcount(a) + std::popcount(b);
      for (std::size_t c = 1; c < families; ++c) {
        const CellMask uc = unions[c];
        const CellMask multiple = both | (either & uc);
        const CellMask once = (either | uc) & ~multiple;
        const auto e = static_cast<std::size_t>(std::popcount(once) + 2 * std::popcount(multiple));
        hist[e] += ((parity_ab + std::popcount(c)) % 2 == 0) ? 1 : -1;
      }
    }
  }
  return signed_histogram_sum(hist, static_cast<unsigned>(2 * cells));
}

bool graph_plane_percolates(const CellGraph& g, CellMask open) {
  CellMask reached = 0;
  for (int s : g.sources()) {
    if (open >> s & 1U) reached |= CellMask{1} << s;
  }
  CellMask frontier = reached;
  while (frontier != 0) {
    const int c = std::countr_zero(frontier);
    frontier &= frontier - 1;
    if (g.is_target(c)) return true;
    for (int nb : g.neighbors(c)) {
      const CellMask bit = CellMask{1} << nb;
      if ((open & bit) && !(reached & bit)) {
        reached |= bit;
        frontier |= bit;
      }
    }
  }
  return false;
}

Rational brute_force_prob(const CellGraph& g, int n, FluidEvent event, int budget) {
  require_mask_width(g);
  const ColoringEnumerator space(g.cell_count(), n, budget);
  const int m = g.cell_count();
  const CellMask cell_mask = (CellMask{1} << m) - 1;

  std::vector<std::uint8_t> table;
  const bool tabulate = m <= 20;
  if (tabulate) {
    table.resize(std::size_t{1} << m);
    for (CellMask w = 0; w <= cell_mask; ++w) table[w] = graph_plane_percolates(g, w) ? 1 : 0;
  }
  const auto percolates = [&](CellMask plane) {
    return tabulate ? table[plane] != 0 : graph_plane_percolates(g, plane);
  };

  std::uint64_t hits = 0;
  for (std::uint64_t index = 0; index < space.total(); ++index) {
    if (event == FluidEvent::OneFluid) {
      hits += percolates(index & cell_mask) ? 1 : 0;
      continue;
    }
    CellMask last = cell_mask;
    bool all = true;
    for (int i = 0; i + 1 < n && all; ++i) {
      const CellMask plane = (index >> (static_cast<unsigned>(i * m))) & cell_mask;
      last ^= plane;
      all = percolates(plane);
    }
    if (!all) continue;
    hits += percolates(last) ? 1 : 0;
  }
  return Rational(BigInt(hits), BigInt(space.total()));
}

}  // namespace hexperc
