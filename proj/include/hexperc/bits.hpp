#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hexperc {

/// Fixed-length bit vector stored as 64-bit words, low bit of word 0 first.
/// Bits past size() in the last word are kept at zero.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false);

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  std::size_t count() const noexcept;
  bool all() const noexcept { return count() == size_; }
  bool none() const noexcept { return count() == 0; }

  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Clears the unused high bits of the last word.
  void trim() noexcept;

  BitVector& operator^=(const BitVector& other) noexcept;
  BitVector& operator|=(const BitVector& other) noexcept;
  BitVector& operator&=(const BitVector& other) noexcept;
  BitVector operator~() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Lowercase hex, most significant nibble first, ceil(size/4) digits.
  std::string to_hex() const;
  static BitVector from_hex(std::string_view hex, std::size_t size);

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
inline BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
inline BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

}  // namespace hexperc
