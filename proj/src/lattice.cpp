#include "hexperc/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "hexperc/errors.hpp"

namespace hexperc {

int hex_distance(HexCoord a, HexCoord b) noexcept {
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

CellId Lattice::index_of(HexCoord c) const noexcept {
  const auto it = coord_index_.find(c);
  return it == coord_index_.end() ? -1 : it->second;
}

std::vector<CellId> Lattice::boundary_cells() const {
  std::vector<CellId> out;
  for (CellId id = 0; id < m(); ++id) {
    if (is_boundary(id)) out.push_back(id);
  }
  return out;
}

Lattice build_lattice(int s) {
  if (s < 2) throw ParameterError("lattice side s must be >= 2, got " + std::to_string(s));
  const HexCoord origin{};
  const int radius = s - 1;

  Lattice lat;
  lat.s_ = s;
  for (int q = -radius; q <= radius; ++q) {
    for (int r = -radius; r <= radius; ++r) {
      const HexCoord c{q, r};
      if (c != origin && hex_distance(c, origin) <= radius) lat.cells_.push_back(c);
    }
  }
  // Nested loops already emit (q, r) in lexicographic order.
  const auto m = lat.cells_.size();
  if (m != static_cast<std::size_t>(3 * s * (s - 1))) {
    throw std::logic_error("hex ball cardinality mismatch for s=" + std::to_string(s));
  }
  lat.coord_index_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) lat.coord_index_.emplace(lat.cells_[i], static_cast<CellId>(i));

  lat.boundary_mask_ = BitVector(m);
  lat.center_adjacent_mask_ = BitVector(m);
  lat.adj_offsets_.reserve(m + 1);
  lat.adj_offsets_.push_back(0);
  for (std::size_t i = 0; i < m; ++i) {
    const HexCoord c = lat.cells_[i];
    int in_patch = 0;  // counts O as a neighbor
    std::vector<CellId> nbrs;
    for (const auto& step : kHexSteps) {
      const HexCoord nb{c.q + step.q, c.r + step.r};
      if (nb == origin) {
        ++in_patch;
        lat.center_adjacent_mask_.set(i);
        continue;
      }
      const CellId id = lat.index_of(nb);
      if (id >= 0) {
        ++in_patch;
        nbrs.push_back(id);
      }
    }
    if (in_patch < 6) lat.boundary_mask_.set(i);
    std::sort(nbrs.begin(), nbrs.end());
    lat.adj_targets_.insert(lat.adj_targets_.end(), nbrs.begin(), nbrs.end());
    lat.adj_offsets_.push_back(static_cast<std::int32_t>(lat.adj_targets_.size()));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (lat.center_adjacent_mask_.test(i)) lat.center_adjacent_.push_back(static_cast<CellId>(i));
  }
  return lat;
}

CellGraph::CellGraph(int cell_count, std::vector<std::pair<int, int>> edges, std::vector<int> sources,
                     std::vector<int> targets)
    : cell_count_(cell_count) {
  if (cell_count < 1) throw ParameterError("cell graph needs at least one cell");
  const auto check = [cell_count](int c, const char* what) {
    if (c < 0 || c >= cell_count) {
      throw ParameterError(std::string(what) + " " + std::to_string(c) + " out of range [0, " +
                           std::to_string(cell_count) + ")");
    }
  };
  std::set<std::pair<int, int>> unique;
  for (auto [a, b] : edges) {
    check(a, "edge endpoint");
    check(b, "edge endpoint");
    if (a == b) throw ParameterError("self-loop at cell " + std::to_string(a));
    unique.emplace(std::min(a, b), std::max(a, b));
  }
  edges_.assign(unique.begin(), unique.end());

  const auto normalize = [&](std::vector<int>& v, const char* what) {
    for (int c : v) check(c, what);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) throw ParameterError(std::string(what) + " set must be nonempty");
  };
  normalize(sources, "source");
  normalize(targets, "target");
  sources_ = std::move(sources);
  targets_ = std::move(targets);

  const auto n = static_cast<std::size_t>(cell_count);
  source_flag_.assign(n, 0);
  target_flag_.assign(n, 0);
  for (int c : sources_) source_flag_[static_cast<std::size_t>(c)] = 1;
  for (int c : targets_) target_flag_[static_cast<std::size_t>(c)] = 1;
  adjacency_.assign(n, {});
  for (auto [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

CellGraph as_cell_graph(const Lattice& lat) {
  std::vector<std::pair<int, int>> edges;
  for (CellId a = 0; a < lat.m(); ++a) {
    for (CellId b : lat.neighbors(a)) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  const auto ca = lat.center_adjacent();
  std::vector<int> sources(ca.begin(), ca.end());
  const auto boundary = lat.boundary_cells();
  std::vector<int> targets(boundary.begin(), boundary.end());
  return CellGraph(lat.m(), std::move(edges), std::move(sources), std::move(targets));
}

void to_json(nlohmann::json& j, const CellGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  j = nlohmann::json{{"cells", g.cell_count()}, {"edges", edges}, {"sources", g.sources()},
                     {"targets", g.targets()}};
}

void from_json(const nlohmann::json& j, CellGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ParameterError("each edge must be a pair [i, j]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  g = CellGraph(j.at("cells").get<int>(), std::move(edges), j.at("sources").get<std::vector<int>>(),
                j.at("targets").get<std::vector<int>>());
}

namespace {

struct GraphShape {
  int cells;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> sources;
  std::vector<int> targets;
};

const std::map<std::string, GraphShape>& builtin_shapes() {
  static const std::map<std::string, GraphShape> shapes = {
      {"cell1", {1, {}, {0}, {0}}},
      {"chain2", {2, {{0, 1}}, {0}, {1}}},
      {"chain3", {3, {{0, 1}, {1, 2}}, {0}, {2}}},
      {"parallel2", {2, {}, {0, 1}, {0, 1}}},
      {"parallel3", {3, {}, {0, 1, 2}, {0, 1, 2}}},
      {"fork", {3, {{0, 1}, {0, 2}}, {0}, {1, 2}}},
      {"diamond", {4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {0}, {3}}},
      {"triangle", {3, {{0, 1}, {1, 2}, {0, 2}}, {0}, {1, 2}}},
      {"pair_edge", {2, {{0, 1}}, {0, 1}, {0, 1}}},
      {"unreachable", {2, {}, {0}, {1}}},
      {"ladder", {6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}, {0, 3}, {2, 5}}},
      {"square_cycle", {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}, {2}}},
  };
  return shapes;
}

}  // namespace

CellGraph builtin_graph(const std::string& name) {
  if (name == "m2") return as_cell_graph(build_lattice(2));
  const auto& shapes = builtin_shapes();
  const auto it = shapes.find(name);
  if (it == shapes.end()) throw ParameterError("unknown builtin graph '" + name + "'");
  const auto& shape = it->second;
  return CellGraph(shape.cells, shape.edges, shape.sources, shape.targets);
}

std::vector<std::string> builtin_graph_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : builtin_shapes()) names.push_back(name);
  names.push_back("m2");
  return names;
}

}  // namespace hexperc
