#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hexperc/bits.hpp"

namespace hexperc {

/// Axial hex coordinate. Neighbors differ by one of the six unit steps
/// (±1,0), (0,±1), (+1,−1), (−1,+1).
struct HexCoord {
  int q = 0;
  int r = 0;

  friend auto operator<=>(const HexCoord&, const HexCoord&) = default;
};

struct HexCoordHash {
  std::size_t operator()(const HexCoord& c) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.q) << 32) ^
                                     static_cast<std::uint32_t>(c.r));
  }
};

inline constexpr HexCoord kHexSteps[6] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

int hex_distance(HexCoord a, HexCoord b) noexcept;

using CellId = std::int32_t;

/// The patch of cells within hex distance s−1 of the uncolored center O,
/// with O itself removed from the cell list. Immutable after construction.
class Lattice {
public:
  int s() const noexcept { return s_; }
  int m() const noexcept { return static_cast<int>(cells_.size()); }

  std::span<const HexCoord> cells() const noexcept { return cells_; }
  HexCoord coord(CellId id) const noexcept { return cells_[static_cast<std::size_t>(id)]; }
  /// Returns -1 when the coordinate is O or outside the patch.
  CellId index_of(HexCoord c) const noexcept;

  std::span<const CellId> neighbors(CellId id) const noexcept {
    return {adj_targets_.data() + adj_offsets_[id], adj_targets_.data() + adj_offsets_[id + 1]};
  }
  bool is_boundary(CellId id) const noexcept { return boundary_mask_.test(static_cast<std::size_t>(id)); }
  const BitVector& boundary_mask() const noexcept { return boundary_mask_; }
  std::span<const CellId> center_adjacent() const noexcept { return center_adjacent_; }
  const BitVector& center_adjacent_mask() const noexcept { return center_adjacent_mask_; }
  std::vector<CellId> boundary_cells() const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

private:
  friend Lattice build_lattice(int s);

  int s_ = 0;
  std::vector<HexCoord> cells_;
  std::unordered_map<HexCoord, CellId, HexCoordHash> coord_index_;
  std::vector<std::int32_t> adj_offsets_;
  std::vector<CellId> adj_targets_;
  BitVector boundary_mask_;
  std::vector<CellId> center_adjacent_;
  BitVector center_adjacent_mask_;
};

/// Builds M_s for s >= 2; cells are ordered lexicographically by (q, r).
Lattice build_lattice(int s);

/// Generic undirected graph with designated path sources and targets.
class CellGraph {
public:
  CellGraph() = default;
  /// Validates: edges in range, no self-loops, sources and targets nonempty.
  /// Duplicate and reversed edges are merged.
  CellGraph(int cell_count, std::vector<std::pair<int, int>> edges, std::vector<int> sources,
            std::vector<int> targets);

  int cell_count() const noexcept { return cell_count_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<int>& sources() const noexcept { return sources_; }
  const std::vector<int>& targets() const noexcept { return targets_; }
  bool is_source(int c) const noexcept { return source_flag_[static_cast<std::size_t>(c)] != 0; }
  bool is_target(int c) const noexcept { return target_flag_[static_cast<std::size_t>(c)] != 0; }
  /// Sorted ascending.
  const std::vector<int>& neighbors(int c) const noexcept { return adjacency_[static_cast<std::size_t>(c)]; }

private:
  int cell_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> sources_;
  std::vector<int> targets_;
  std::vector<char> source_flag_;
  std::vector<char> target_flag_;
  std::vector<std::vector<int>> adjacency_;
};

CellGraph as_cell_graph(const Lattice& lat);

void to_json(nlohmann::json& j, const CellGraph& g);
void from_json(const nlohmann::json& j, CellGraph& g);

/// Builtin toy graphs: "cell1", "chain2", "parallel2", "m2" and a few
/// larger ones used by the oracle tests. Throws ParameterError on unknown names.
CellGraph builtin_graph(const std::string& name);
std::vector<std::string> builtin_graph_names();

}  // namespace hexperc
