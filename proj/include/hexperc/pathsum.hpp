#pragma once

#include <cstdint>
#include <vector>

#include "hexperc/lattice.hpp"
#include "hexperc/rational.hpp"

namespace hexperc {

/// Simple source→target path: distinct cells, consecutive cells adjacent.
struct Path {
  std::vector<int> cells;

  friend auto operator<=>(const Path&, const Path&) = default;
};

using CellMask = std::uint64_t;

inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultPathCap = 1'000'000;
inline constexpr int kMaxMaskCells = 64;

/// Every simple path from a source to a target, each once. DFS from sources
/// in ascending order with sorted adjacency; a path may pass through other
/// targets before it ends. Throws Refusal once more than `cap` paths exist.
std::vector<Path> enumerate_paths(const CellGraph& g, std::uint64_t cap = kDefaultPathCap);

/// Number of paths, or Refusal beyond `cap`.
std::uint64_t count_paths(const CellGraph& g, std::uint64_t cap = kDefaultPathCap);

bool is_valid_path(const CellGraph& g, const Path& p);
CellMask path_mask(const Path& p);

/// −Σ over nonempty path families S of (−1)^{#S} 2^{−|S|}: the probability
/// that one fluid percolates. Requires 2^P <= subset_cap for P paths.
Rational single_fluid_sum(const CellGraph& g, std::uint64_t subset_cap = kDefaultSubsetCap);

struct CoveragePartition {
  CellMask uncovered = 0;     // T0
  CellMask once = 0;          // T1
  CellMask multiple = 0;      // T_{2-3}
};

/// Splits cells 0..m−1 by how many of u1, u2, u3 cover them.
CoveragePartition partition_T(CellMask u1, CellMask u2, CellMask u3, int m);

/// −Σ over triples of nonempty path families of
/// (−1)^{#S1+#S2+#S3} 2^{−|T1|} 4^{−|T_{2-3}|}: the probability that all three
/// fluids percolate at n = 3. Requires 2^{3P} <= subset_cap.
Rational triple_fluid_sum(const CellGraph& g, std::uint64_t subset_cap = kDefaultSubsetCap);

enum class FluidEvent { OneFluid, AllFluids };

/// Reachability over the open cells of a graph from an open source to an open target.
bool graph_plane_percolates(const CellGraph& g, CellMask open);

/// Exact probability by enumerating all parity-constrained colorings of the
/// graph's cells. Requires (n−1)·cell_count <= budget.
Rational brute_force_prob(const CellGraph& g, int n, FluidEvent event, int budget = 30);

}  // namespace hexperc
