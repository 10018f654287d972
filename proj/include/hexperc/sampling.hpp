#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "hexperc/bits.hpp"
#include "hexperc/lattice.hpp"
#include "hexperc/rng.hpp"

namespace hexperc {

inline constexpr int kDefaultEnumerationBudget = 30;

/// One point of the coloring space: n bit planes over m cells whose XOR is
/// all ones at every cell.
class Coloring {
public:
  Coloring() = default;
  /// Takes ownership of the planes; throws ParameterError if the parity
  /// constraint fails or plane lengths disagree.
  explicit Coloring(std::vector<BitVector> planes);

  int n() const noexcept { return static_cast<int>(planes_.size()); }
  int m() const noexcept { return planes_.empty() ? 0 : static_cast<int>(planes_.front().size()); }
  const BitVector& plane(int i) const noexcept { return planes_[static_cast<std::size_t>(i)]; }
  const std::vector<BitVector>& planes() const noexcept { return planes_; }

  /// Color of one cell as an n-bit word, bit i = fluid i.
  std::uint32_t cell_color(int cell) const noexcept;

  friend bool operator==(const Coloring&, const Coloring&) = default;

private:
  friend class ColoringSampler;
  friend class ColoringEnumerator;
  std::vector<BitVector> planes_;
};

bool satisfies_parity(const std::vector<BitVector>& planes);

/// Draws planes 1..n−1 as fair bits and completes plane n by parity.
Coloring sample_coloring(const Lattice& lat, int n, RngStream& rng);

/// Reusable buffer for the Monte Carlo hot loop.
class ColoringSampler {
public:
  ColoringSampler(int m, int n);
  const Coloring& draw(RngStream& rng);

private:
  Coloring buffer_;
};

/// Walks all 2^{(n−1)m} colorings in binary-counter order: free bit
/// b = plane·m + cell of the counter drives f_plane(cell).
class ColoringEnumerator {
public:
  /// Throws Refusal when (n−1)·m exceeds budget.
  ColoringEnumerator(int m, int n, int budget = kDefaultEnumerationBudget);

  std::uint64_t total() const noexcept { return total_; }
  /// Fills `out` with the next coloring; false once exhausted.
  bool next(Coloring& out);
  /// The coloring at a given counter value.
  Coloring at(std::uint64_t index) const;

private:
  int m_;
  int n_;
  std::uint64_t total_;
  std::uint64_t index_ = 0;
};

ColoringEnumerator enumerate_colorings(const Lattice& lat, int n, int budget = kDefaultEnumerationBudget);

/// {"n":..,"m":..,"planes":["<hex>", ...]}
nlohmann::json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& j);

}  // namespace hexperc
