#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmstuck/errors.hpp"

namespace rmstuck {

/// Packed binary vector.
///
/// Position 0 is stored in the most significant bit of the first 64-bit
/// word, so comparing the word arrays as unsigned integers gives the
/// lexicographic order on bits (0 < 1, position 0 most significant). Bits
/// past `size()` in the last word are always zero.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;

  /// All-zero vector of `len` bits.
  explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static BitVector ones(std::size_t len) {
    BitVector v(len);
    std::fill(v.words_.begin(), v.words_.end(), ~Word{0});
    v.clear_padding();
    return v;
  }

  /// Parses a string of '0'/'1' characters; other characters are rejected.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw ParameterError("bit string contains non-binary character '" + std::string(1, bits[i]) + "'");
      }
    }
    return v;
  }

  static BitVector from_bits(std::initializer_list<int> bits) {
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
  }

  static BitVector from_bits(std::span<const std::uint8_t> bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v.set(i, bits[i] != 0);
    return v;
  }

  /// `[left, right]`.
  static BitVector concat(const BitVector& left, const BitVector& right) {
    BitVector out(left.len_ + right.len_);
    std::copy(left.words_.begin(), left.words_.end(), out.words_.begin());
    const std::size_t shift = left.len_ % kWordBits;
    const std::size_t base = left.len_ / kWordBits;
    if (shift == 0) {
      std::copy(right.words_.begin(), right.words_.end(), out.words_.begin() + static_cast<std::ptrdiff_t>(base));
    } else {
      for (std::size_t w = 0; w < right.words_.size(); ++w) {
        out.words_[base + w] |= right.words_[w] >> shift;
        if (base + w + 1 < out.words_.size()) {
          out.words_[base + w + 1] |= right.words_[w] << (kWordBits - shift);
        }
      }
    }
    return out;
  }

  [[nodiscard]] std::size_t size() const noexcept { return len_; }
  [[nodiscard]] bool empty() const noexcept { return len_ == 0; }

  [[nodiscard]] bool test(std::size_t pos) const noexcept {
    return (words_[pos / kWordBits] >> (kWordBits - 1 - pos % kWordBits)) & 1U;
  }
  [[nodiscard]] bool operator[](std::size_t pos) const noexcept { return test(pos); }

  void set(std::size_t pos, bool value = true) noexcept {
    const Word bit = Word{1} << (kWordBits - 1 - pos % kWordBits);
    if (value) {
      words_[pos / kWordBits] |= bit;
    } else {
      words_[pos / kWordBits] &= ~bit;
    }
  }
  void reset(std::size_t pos) noexcept { set(pos, false); }
  void flip(std::size_t pos) noexcept { words_[pos / kWordBits] ^= Word{1} << (kWordBits - 1 - pos % kWordBits); }

  [[nodiscard]] std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  [[nodiscard]] bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  [[nodiscard]] bool all() const noexcept { return count() == len_; }

  /// Lowest set position, or size() when none.
  [[nodiscard]] std::size_t find_first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countl_zero(words_[w]));
    }
    return len_;
  }

  [[nodiscard]] BitVector complement() const {
    BitVector out(*this);
    for (Word& w : out.words_) w = ~w;
    out.clear_padding();
    return out;
  }

  /// Bits [offset, offset + len).
  [[nodiscard]] BitVector slice(std::size_t offset, std::size_t len) const {
    if (offset + len > len_) throw ParameterError("slice out of range");
    BitVector out(len);
    if (offset % kWordBits == 0) {
      std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(offset / kWordBits), out.words_.size(),
                  out.words_.begin());
      out.clear_padding();
    } else {
      for (std::size_t i = 0; i < len; ++i) out.set(i, test(offset + i));
    }
    return out;
  }

  /// Values at `positions`, in the given order.
  [[nodiscard]] BitVector restrict_to(std::span<const std::size_t> positions) const {
    BitVector out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) out.set(i, test(positions[i]));
    return out;
  }

  BitVector& operator^=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

  [[nodiscard]] std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out(len_);
    for (std::size_t i = 0; i < len_; ++i) out[i] = test(i) ? 1 : 0;
    return out;
  }

  [[nodiscard]] std::size_t hash() const noexcept {
    std::size_t h = len_ * 0x9E3779B97F4A7C15ULL;
    for (Word w : words_) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
    return h;
  }

 private:
  static constexpr std::size_t word_count(std::size_t len) { return (len + kWordBits - 1) / kWordBits; }

  void clear_padding() noexcept {
    const std::size_t tail = len_ % kWordBits;
    if (tail != 0) words_.back() &= ~Word{0} << (kWordBits - tail);
  }

  void require_same_size(const BitVector& other) const {
    if (other.len_ != len_) throw ParameterError("bit vector length mismatch");
  }

  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Word of length 2^m: masks, codewords, read words.
using BitWord = BitVector;

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

[[nodiscard]] inline std::size_t hamming_distance(const BitVector& a, const BitVector& b) { return (a ^ b).count(); }

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

/// ceil(log2(n)) for n >= 1.
[[nodiscard]] constexpr int ceil_log2(std::uint64_t n) noexcept {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

}  // namespace rmstuck
