#include "hexperc/sampling.hpp"

#include <string>

#include "hexperc/errors.hpp"

namespace hexperc {

bool satisfies_parity(const std::vector<BitVector>& planes) {
  if (planes.empty()) return false;
  BitVector acc(planes.front().size());
  for (const auto& p : planes) {
    if (p.size() != acc.size()) return false;
    acc ^= p;
  }
  return acc.all();
}

Coloring::Coloring(std::vector<BitVector> planes) : planes_(std::move(planes)) {
  if (planes_.size() < 2) throw ParameterError("a coloring needs n >= 2 planes");
  if (!satisfies_parity(planes_)) {
    throw ParameterError("planes violate the parity constraint f_1 + ... + f_n = 1 (mod 2)");
  }
}

std::uint32_t Coloring::cell_color(int cell) const noexcept {
  std::uint32_t color = 0;
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    if (planes_[i].test(static_cast<std::size_t>(cell))) color |= 1U << i;
  }
  return color;
}

ColoringSampler::ColoringSampler(int m, int n) {
  if (n < 2) throw ParameterError("fluid count n must be >= 2, got " + std::to_string(n));
  if (m < 1) throw ParameterError("cell count must be positive");
  buffer_.planes_.assign(static_cast<std::size_t>(n), BitVector(static_cast<std::size_t>(m)));
}

const Coloring& ColoringSampler::draw(RngStream& rng) {
  auto& planes = buffer_.planes_;
  auto last = planes.back().words();
  for (auto& w : last) w = ~std::uint64_t{0};
  for (std::size_t i = 0; i + 1 < planes.size(); ++i) {
    auto words = planes[i].words();
    for (std::size_t k = 0; k < words.size(); ++k) {
      words[k] = rng();
      last[k] ^= words[k];
    }
    planes[i].trim();
  }
  planes.back().trim();
  return buffer_;
}

Coloring sample_coloring(const Lattice& lat, int n, RngStream& rng) {
  ColoringSampler sampler(lat.m(), n);
  return sampler.draw(rng);
}

ColoringEnumerator::ColoringEnumerator(int m, int n, int budget) : m_(m), n_(n) {
  if (n < 2) throw ParameterError("fluid count n must be >= 2, got " + std::to_string(n));
  if (m < 1) throw ParameterError("cell count must be positive");
  const long long bits = static_cast<long long>(n - 1) * m;
  if (bits > budget || bits > 62) {
    throw Refusal("state space too large: (n-1)*m = " + std::to_string(bits) + " free bits exceeds budget of " +
                  std::to_string(budget));
  }
  total_ = std::uint64_t{1} << bits;
}

Coloring ColoringEnumerator::at(std::uint64_t index) const {
  const std::uint64_t cell_mask = (std::uint64_t{1} << m_) - 1;
  std::vector<BitVector> planes(static_cast<std::size_t>(n_), BitVector(static_cast<std::size_t>(m_)));
  std::uint64_t last = cell_mask;
  for (int i = 0; i + 1 < n_; ++i) {
    const std::uint64_t bits = (index >> (static_cast<unsigned>(i) * static_cast<unsigned>(m_))) & cell_mask;
    planes[static_cast<std::size_t>(i)].words()[0] = bits;
    last ^= bits;
  }
  planes.back().words()[0] = last;
  Coloring out;
  out.planes_ = std::move(planes);
  return out;
}

bool ColoringEnumerator::next(Coloring& out) {
  if (index_ >= total_) return false;
  out = at(index_++);
  return true;
}

ColoringEnumerator enumerate_colorings(const Lattice& lat, int n, int budget) {
  return ColoringEnumerator(lat.m(), n, budget);
}

nlohmann::json coloring_to_json(const Coloring& c) {
  nlohmann::json planes = nlohmann::json::array();
  for (const auto& p : c.planes()) planes.push_back(p.to_hex());
  return {{"n", c.n()}, {"m", c.m()}, {"planes", planes}};
}

Coloring coloring_from_json(const nlohmann::json& j) {
  const auto m = j.at("m").get<std::size_t>();
  const auto n = j.at("n").get<std::size_t>();
  const auto& hex = j.at("planes");
  if (hex.size() != n) throw ParameterError("plane count does not match n");
  std::vector<BitVector> planes;
  for (const auto& h : hex) planes.push_back(BitVector::from_hex(h.get<std::string>(), m));
  return Coloring(std::move(planes));
}

}  // namespace hexperc
