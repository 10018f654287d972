#include "hexperc/bits.hpp"

#include "hexperc/errors.hpp"

namespace hexperc {

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  trim();
}

std::size_t BitVector::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void BitVector::trim() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

std::string BitVector::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t nibbles = (size_ + 3) / 4;
  std::string out(nibbles, '0');
  for (std::size_t j = 0; j < nibbles; ++j) {
    const std::size_t bit = 4 * j;
    const unsigned v = static_cast<unsigned>((words_[bit >> 6] >> (bit & 63)) & 0xF);
    out[nibbles - 1 - j] = digits[v];
  }
  return out;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) {
    throw ParameterError("hex plane has " + std::to_string(hex.size()) + " digits, expected " +
                         std::to_string((size + 3) / 4));
  }
  BitVector out(size);
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const char c = hex[hex.size() - 1 - j];
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw ParameterError(std::string("invalid hex digit '") + c + "'");
    }
    const std::size_t bit = 4 * j;
    out.words_[bit >> 6] |= static_cast<std::uint64_t>(v) << (bit & 63);
  }
  const auto before = out.count();
  out.trim();
  if (out.count() != before) throw ParameterError("hex plane sets bits beyond its length");
  return out;
}

}  // namespace hexperc
