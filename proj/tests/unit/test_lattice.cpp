#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "hexperc/errors.hpp"
#include "hexperc/lattice.hpp"

using namespace hexperc;

namespace {

// BFS over the infinite axial grid, independent of the closed-form metric.
int bfs_distance(HexCoord a, HexCoord b) {
  std::map<HexCoord, int> dist{{a, 0}};
  std::queue<HexCoord> frontier;
  frontier.push(a);
  while (!frontier.empty()) {
    const auto c = frontier.front();
    frontier.pop();
    if (c == b) return dist[c];
    for (const auto& step : kHexSteps) {
      const HexCoord nb{c.q + step.q, c.r + step.r};
      if (dist.emplace(nb, dist[c] + 1).second) frontier.push(nb);
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("hex_distance examples") {
  CHECK(hex_distance({3, -1}, {3, -1}) == 0);
  CHECK(hex_distance({0, 0}, {0, 1}) == 1);
  CHECK(hex_distance({0, 0}, {2, -1}) == 2);
  CHECK(bfs_distance({0, 0}, {2, -1}) == 2);
}

TEST_CASE("hex_distance agrees with BFS and is a metric") {
  std::vector<HexCoord> pts;
  for (int q = -3; q <= 3; ++q) {
    for (int r = -3; r <= 3; ++r) pts.push_back({q, r});
  }
  for (const auto& a : pts) {
    for (const auto& b : {HexCoord{0, 0}, HexCoord{1, -2}, HexCoord{-2, 3}}) {
      CHECK(hex_distance(a, b) == bfs_distance(a, b));
      CHECK(hex_distance(a, b) == hex_distance(b, a));
      CHECK((hex_distance(a, b) == 0) == (a == b));
    }
    for (const auto& step : kHexSteps) CHECK(hex_distance(a, {a.q + step.q, a.r + step.r}) == 1);
  }
}

TEST_CASE("build_lattice rejects s < 2") {
  CHECK_THROWS_AS(build_lattice(1), ParameterError);
  CHECK_THROWS_AS(build_lattice(-4), ParameterError);
}

TEST_CASE("small lattices") {
  const auto l2 = build_lattice(2);
  CHECK(l2.m() == 6);
  CHECK(l2.boundary_cells().size() == 6);
  CHECK(l2.center_adjacent().size() == 6);

  const auto l3 = build_lattice(3);
  CHECK(l3.m() == 18);
  CHECK(l3.boundary_cells().size() == 12);
  CHECK(l3.center_adjacent().size() == 6);

  CHECK(build_lattice(5).m() == 60);
}

TEST_CASE("lattice invariants for s in 2..12") {
  for (int s = 2; s <= 12; ++s) {
    CAPTURE(s);
    const auto lat = build_lattice(s);
    CHECK(lat.m() == 3 * s * (s - 1));
    CHECK(static_cast<int>(lat.boundary_cells().size()) == 6 * (s - 1));
    CHECK(lat.center_adjacent().size() == 6);
    CHECK(std::is_sorted(lat.cells().begin(), lat.cells().end()));
    for (CellId c = 0; c < lat.m(); ++c) {
      const auto coord = lat.coord(c);
      CHECK(lat.index_of(coord) == c);
      const bool at_rim = hex_distance(coord, {}) == s - 1;
      CHECK(lat.is_boundary(c) == at_rim);
      const int with_center = static_cast<int>(lat.neighbors(c).size()) + (hex_distance(coord, {}) == 1 ? 1 : 0);
      if (!lat.is_boundary(c)) CHECK(with_center == 6);
      if (lat.is_boundary(c)) CHECK(with_center < 6);
      for (CellId nb : lat.neighbors(c)) {
        const auto back = lat.neighbors(nb);
        CHECK(std::find(back.begin(), back.end(), c) != back.end());
        CHECK(hex_distance(coord, lat.coord(nb)) == 1);
      }
    }
    CHECK(lat.index_of({0, 0}) == -1);
  }
}

TEST_CASE("build_lattice is deterministic") {
  CHECK(build_lattice(7) == build_lattice(7));
}

TEST_CASE("as_cell_graph at s=2 is the six-cycle") {
  const auto g = as_cell_graph(build_lattice(2));
  CHECK(g.cell_count() == 6);
  CHECK(g.edges().size() == 6);
  CHECK(g.sources().size() == 6);
  CHECK(g.targets().size() == 6);
  for (int c = 0; c < 6; ++c) CHECK(g.neighbors(c).size() == 2);
  // connected: walk the cycle
  std::set<int> seen{0};
  int prev = -1, cur = 0;
  for (int i = 0; i < 5; ++i) {
    const auto& nb = g.neighbors(cur);
    const int next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
    seen.insert(cur);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("as_cell_graph at s=3 separates sources from targets") {
  const auto g = as_cell_graph(build_lattice(3));
  CHECK(g.cell_count() == 18);
  std::vector<int> both;
  std::set_intersection(g.sources().begin(), g.sources().end(), g.targets().begin(), g.targets().end(),
                        std::back_inserter(both));
  CHECK(both.empty());
  for (int s = 2; s <= 6; ++s) {
    const auto gs = as_cell_graph(build_lattice(s));
    CHECK_FALSE(gs.sources().empty());
    CHECK_FALSE(gs.targets().empty());
  }
}

TEST_CASE("cell graph validation") {
  CHECK_THROWS_AS(CellGraph(2, {{0, 0}}, {0}, {1}), ParameterError);
  CHECK_THROWS_AS(CellGraph(2, {{0, 2}}, {0}, {1}), ParameterError);
  CHECK_THROWS_AS(CellGraph(2, {}, {}, {1}), ParameterError);
  CHECK_THROWS_AS(CellGraph(2, {}, {0}, {}), ParameterError);
  const CellGraph g(3, {{1, 0}, {0, 1}, {2, 1}}, {0, 0}, {2});
  CHECK(g.edges().size() == 2);
  CHECK(g.sources().size() == 1);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
}

TEST_CASE("cell graph JSON format") {
  const auto g = builtin_graph("diamond");
  const nlohmann::json j = g;
  CHECK(j.at("cells") == 4);
  CHECK(j.at("edges").size() == 4);
  CHECK(j.at("sources") == nlohmann::json::array({0}));
  const auto parsed = nlohmann::json::parse(R"({"cells": 3, "edges": [[0,1],[1,2]], "sources": [0], "targets": [2]})")
                          .get<CellGraph>();
  CHECK(parsed.cell_count() == 3);
  CHECK(parsed.is_target(2));
  CHECK(nlohmann::json(parsed) == nlohmann::json(builtin_graph("chain3")));
  CHECK_THROWS(nlohmann::json::parse(R"({"cells": 2, "edges": [[0]], "sources": [0], "targets": [1]})").get<CellGraph>());
}

TEST_CASE("builtin graphs") {
  for (const auto& name : builtin_graph_names()) CHECK_NOTHROW(builtin_graph(name));
  CHECK_THROWS_AS(builtin_graph("nope"), ParameterError);
  CHECK(builtin_graph("m2").cell_count() == 6);
}
