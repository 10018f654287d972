#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "hexperc/pathsum.hpp"
#include "hexperc/percolation.hpp"

using namespace hexperc;

namespace {

BitVector random_mask(int m, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(density);
  BitVector v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) v.set(static_cast<std::size_t>(i), bit(rng));
  return v;
}

// Flood fill over coordinates, written against the geometry only.
bool coord_flood(const Lattice& lat, const BitVector& open) {
  std::vector<char> seen(static_cast<std::size_t>(lat.m()), 0);
  std::vector<HexCoord> todo;
  for (const auto& step : kHexSteps) {
    const auto id = lat.index_of(step);
    if (id >= 0 && open.test(static_cast<std::size_t>(id))) {
      seen[static_cast<std::size_t>(id)] = 1;
      todo.push_back(step);
    }
  }
  while (!todo.empty()) {
    const auto c = todo.back();
    todo.pop_back();
    if (hex_distance(c, {}) == lat.s() - 1) return true;
    for (const auto& step : kHexSteps) {
      const HexCoord nb{c.q + step.q, c.r + step.r};
      const auto id = lat.index_of(nb);
      if (id < 0 || !open.test(static_cast<std::size_t>(id)) || seen[static_cast<std::size_t>(id)]) continue;
      seen[static_cast<std::size_t>(id)] = 1;
      todo.push_back(nb);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("extreme masks") {
  for (int s : {2, 3, 6}) {
    const auto lat = build_lattice(s);
    CHECK(plane_percolates(lat, BitVector(static_cast<std::size_t>(lat.m()), true)));
    CHECK_FALSE(plane_percolates(lat, BitVector(static_cast<std::size_t>(lat.m()))));
  }
}

TEST_CASE("s=2: any open cell percolates") {
  const auto lat = build_lattice(2);
  for (int c = 0; c < 6; ++c) {
    BitVector v(6);
    v.set(static_cast<std::size_t>(c));
    CHECK(plane_percolates(lat, v));
  }
}

TEST_CASE("s=3: an open ring-1 cell alone does not reach the rim") {
  const auto lat = build_lattice(3);
  BitVector v(18);
  v.set(static_cast<std::size_t>(lat.index_of({1, 0})));
  CHECK_FALSE(plane_percolates(lat, v));
  v.set(static_cast<std::size_t>(lat.index_of({2, 0})));
  CHECK(plane_percolates(lat, v));
  BitVector rim_only = lat.boundary_mask();
  CHECK_FALSE(plane_percolates(lat, rim_only));
}

TEST_CASE("monotone under adding open cells") {
  std::mt19937_64 rng(11);
  for (int s : {3, 5, 9}) {
    const auto lat = build_lattice(s);
    PercolationChecker checker(lat);
    for (int rep = 0; rep < 200; ++rep) {
      auto v = random_mask(lat.m(), 0.5, rng);
      const bool before = checker.percolates(v);
      v |= random_mask(lat.m(), 0.2, rng);
      if (before) CHECK(checker.percolates(v));
    }
  }
}

TEST_CASE("agrees with a coordinate flood fill") {
  std::mt19937_64 rng(3);
  for (int s : {2, 3, 4, 7, 12, 25}) {
    const auto lat = build_lattice(s);
    PercolationChecker checker(lat);
    for (double density : {0.4, 0.5, 0.6, 0.7}) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto v = random_mask(lat.m(), density, rng);
        CHECK(checker.percolates(v) == coord_flood(lat, v));
      }
    }
  }
}

TEST_CASE("s=2 equivalence with the explicit path list") {
  const auto lat = build_lattice(2);
  const auto paths = enumerate_paths(as_cell_graph(lat));
  CHECK(paths.size() == 66);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    BitVector v(6);
    v.words()[0] = mask;
    const bool via_paths = std::any_of(paths.begin(), paths.end(),
                                       [&](const Path& p) { return (path_mask(p) & ~mask) == 0; });
    CHECK(plane_percolates(lat, v) == via_paths);
  }
}

TEST_CASE("s=3 exhaustive comparison over all 2^18 masks") {
  const auto lat = build_lattice(3);
  PercolationChecker checker(lat);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 18); ++mask) {
    BitVector v(18);
    v.words()[0] = mask;
    if (checker.percolates(v) != coord_flood(lat, v)) {
      FAIL("mismatch at mask " << mask);
    }
  }
}

TEST_CASE("outcome is equivariant under fluid permutations") {
  const auto lat = build_lattice(6);
  PercolationChecker checker(lat);
  RngStream rng(77, 0);
  std::mt19937_64 shuffle_rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 5;
    const auto c = sample_coloring(lat, n, rng);
    const auto base = checker.outcome(c);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), shuffle_rng);
    std::vector<BitVector> planes;
    for (int i = 0; i < n; ++i) planes.push_back(c.plane(perm[static_cast<std::size_t>(i)]));
    const auto permuted = checker.outcome(Coloring(planes));
    CHECK(permuted.k() == base.k());
    for (int i = 0; i < n; ++i) CHECK(permuted.percolates(i) == base.percolates(perm[static_cast<std::size_t>(i)]));
    for (int i = 0; i < n; ++i) CHECK(base.percolates(i) == plane_percolates(lat, c.plane(i)));
  }
}
