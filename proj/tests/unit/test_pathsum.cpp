#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "hexperc/errors.hpp"
#include "hexperc/pathsum.hpp"

using namespace hexperc;

namespace {

// Plain BFS reachability, written independently of the library.
bool reaches(const CellGraph& g, std::uint64_t open) {
  std::vector<int> todo;
  std::vector<char> seen(static_cast<std::size_t>(g.cell_count()), 0);
  for (int s : g.sources()) {
    if ((open >> s) & 1U) {
      todo.push_back(s);
      seen[static_cast<std::size_t>(s)] = 1;
    }
  }
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const int c = todo[i];
    if (g.is_target(c)) return true;
    for (int nb : g.neighbors(c)) {
      if (((open >> nb) & 1U) && !seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        todo.push_back(nb);
      }
    }
  }
  return false;
}

Rational oracle_one(const CellGraph& g) {
  const int c = g.cell_count();
  std::uint64_t hits = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << c); ++x) hits += reaches(g, x);
  return Rational(BigInt(hits), BigInt(1) << c);
}

Rational oracle_all3(const CellGraph& g) {
  const int c = g.cell_count();
  const std::uint64_t full = (std::uint64_t{1} << c) - 1;
  std::uint64_t hits = 0;
  for (std::uint64_t a = 0; a <= full; ++a) {
    if (!reaches(g, a)) continue;
    for (std::uint64_t b = 0; b <= full; ++b) hits += reaches(g, b) && reaches(g, full & ~(a ^ b));
  }
  return Rational(BigInt(hits), BigInt(1) << (2 * c));
}

CellGraph random_graph(std::mt19937_64& rng, int cells) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution edge(0.35);
  for (int a = 0; a < cells; ++a) {
    for (int b = a + 1; b < cells; ++b) {
      if (edge(rng)) edges.push_back({a, b});
    }
  }
  std::uniform_int_distribution<int> pick(0, cells - 1);
  const int src = pick(rng);
  int dst = pick(rng);
  std::vector<int> targets{dst};
  if (cells > 2 && (rng() & 1U)) targets.push_back(pick(rng));
  return CellGraph(cells, edges, {src}, targets);
}

}  // namespace

TEST_CASE("named toy values") {
  CHECK(single_fluid_sum(builtin_graph("cell1")) == Rational(1, 2));
  CHECK(single_fluid_sum(builtin_graph("chain2")) == Rational(1, 4));
  CHECK(single_fluid_sum(builtin_graph("parallel2")) == Rational(3, 4));
  CHECK(triple_fluid_sum(builtin_graph("cell1")) == Rational(1, 4));
  CHECK(triple_fluid_sum(builtin_graph("parallel2")) == Rational(7, 16));
  CHECK(triple_fluid_sum(builtin_graph("chain2")) == Rational(1, 16));
  CHECK(single_fluid_sum(builtin_graph("unreachable")) == 0);
}

TEST_CASE("path enumeration") {
  CHECK(count_paths(builtin_graph("m2")) == 66);
  CHECK(count_paths(builtin_graph("diamond")) == 2);
  CHECK(count_paths(builtin_graph("unreachable")) == 0);
  const auto paths = enumerate_paths(builtin_graph("m2"));
  std::set<Path> unique(paths.begin(), paths.end());
  CHECK(unique.size() == paths.size());
  const auto m2 = builtin_graph("m2");
  for (const auto& p : paths) CHECK(is_valid_path(m2, p));
  CHECK_FALSE(is_valid_path(m2, Path{{0, 0}}));
  CHECK(path_mask(Path{{0, 3, 5}}) == 0b101001);
  CHECK_THROWS_AS(enumerate_paths(m2, 10), Refusal);
}

TEST_CASE("sums equal brute force on every builtin") {
  int single = 0, triple = 0;
  for (const auto& name : builtin_graph_names()) {
    CAPTURE(name);
    const auto g = builtin_graph(name);
    const auto one = brute_force_prob(g, 2, FluidEvent::OneFluid);
    CHECK(one == oracle_one(g));
    if (count_paths(g) <= 24) {
      CHECK(single_fluid_sum(g) == one);
      ++single;
    }
    if (g.cell_count() <= 7) {
      const auto all = brute_force_prob(g, 3, FluidEvent::AllFluids);
      CHECK(all == oracle_all3(g));
      if (count_paths(g) <= 8) {
        CHECK(triple_fluid_sum(g) == all);
        ++triple;
      }
    }
  }
  CHECK(single >= 10);
  CHECK(triple >= 5);
}

TEST_CASE("sums equal brute force on random small graphs") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const auto g = random_graph(rng, 2 + rep % 5);
    const auto paths = count_paths(g);
    if (paths > 8) continue;
    CHECK(single_fluid_sum(g) == oracle_one(g));
    CHECK(triple_fluid_sum(g) == oracle_all3(g));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("M_2 brute force and refusal of the signed sums") {
  const auto m2 = builtin_graph("m2");
  CHECK(brute_force_prob(m2, 2, FluidEvent::OneFluid) == Rational(63, 64));
  CHECK(brute_force_prob(m2, 3, FluidEvent::AllFluids) == Rational(3907, 4096));
  try {
    single_fluid_sum(m2);
    FAIL("expected refusal");
  } catch (const Refusal& r) {
    CHECK(std::string(r.what()).find("66 paths") != std::string::npos);
  }
  CHECK_THROWS_AS(triple_fluid_sum(m2), Refusal);
  CHECK_THROWS_AS(brute_force_prob(m2, 7, FluidEvent::OneFluid), Refusal);
}

TEST_CASE("coverage partition") {
  const auto part = partition_T(0b0011, 0b0110, 0b0100, 5);
  CHECK(part.once == 0b0001);
  CHECK(part.multiple == 0b0110);
  CHECK(part.uncovered == 0b11000);
}

TEST_CASE("graph reachability helper") {
  const auto g = builtin_graph("ladder");
  CHECK(graph_plane_percolates(g, 0b000111));
  CHECK(graph_plane_percolates(g, 0b110011));
  CHECK_FALSE(graph_plane_percolates(g, 0b011011));
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(graph_plane_percolates(g, x) == reaches(g, x));
}
