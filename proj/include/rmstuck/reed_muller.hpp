#pragma once

// Reed-Muller codes RM(r, m) over GF(2).
//
// Column j of every generator matrix is the point of F_2^m whose binary
// representation is j; coordinate x_i is bit i of j.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/mask_set.hpp"

namespace rmstuck {

struct RmCode {
  int r = 0;
  int m = 0;
  std::size_t n = 0;  ///< length 2^m
  std::size_t k = 0;  ///< dimension sum_{i<=r} C(m, i)
  std::size_t d = 0;  ///< minimum distance 2^(m-r)
  std::size_t t = 0;  ///< guaranteed correction radius floor((d-1)/2)

  friend bool operator==(const RmCode&, const RmCode&) = default;
};

[[nodiscard]] inline RmCode rm_params(int r, int m) {
  if (m < 0 || m > kMaxLogLength) throw ParameterError("RM log-length m out of range");
  if (r < 0 || r > m) throw ParameterError("RM order must satisfy 0 <= r <= m, got r=" + std::to_string(r));
  RmCode c;
  c.r = r;
  c.m = m;
  c.n = std::size_t{1} << m;
  for (int i = 0; i <= r; ++i) c.k += binomial(m, i);
  c.d = std::size_t{1} << (m - r);
  c.t = (c.d - 1) / 2;
  return c;
}

/// Dense GF(2) matrix stored as packed rows.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t cols, std::vector<BitVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw ParameterError("matrix rows must share one length");
    }
  }

  static Gf2Matrix identity(std::size_t n) {
    std::vector<BitVector> rows(n, BitVector(n));
    for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
    return Gf2Matrix(n, std::move(rows));
  }

  [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t column_count() const noexcept { return cols_; }
  [[nodiscard]] std::span<const BitVector> rows() const noexcept { return rows_; }
  [[nodiscard]] const BitVector& row(std::size_t i) const { return rows_[i]; }

  [[nodiscard]] BitVector column(std::size_t j) const {
    BitVector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c.set(i, rows_[i].test(j));
    return c;
  }

  /// Rows of `top` followed by rows of `bottom`.
  [[nodiscard]] static Gf2Matrix stack(const Gf2Matrix& top, const Gf2Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw ParameterError("stacked matrices differ in width");
    std::vector<BitVector> rows(top.rows_);
    rows.insert(rows.end(), bottom.rows_.begin(), bottom.rows_.end());
    return Gf2Matrix(top.cols_, std::move(rows));
  }

  /// Pivot columns of the reduced row-echelon form, ascending.
  [[nodiscard]] std::vector<std::size_t> pivot_columns() const {
    std::vector<BitVector> work(rows_);
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < cols_ && next < work.size(); ++col) {
      std::size_t p = next;
      while (p < work.size() && !work[p].test(col)) ++p;
      if (p == work.size()) continue;
      std::swap(work[p], work[next]);
      for (std::size_t q = 0; q < work.size(); ++q) {
        if (q != next && work[q].test(col)) work[q] ^= work[next];
      }
      pivots.push_back(col);
      ++next;
    }
    return pivots;
  }

  [[nodiscard]] std::size_t rank() const { return pivot_columns().size(); }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

[[nodiscard]] inline std::size_t rank(const Gf2Matrix& mat) { return mat.rank(); }

/// Variable subsets (as bit masks over x_0..x_{m-1}) of size <= r, ordered by
/// size and then lexicographically on their sorted index lists.
[[nodiscard]] inline std::vector<std::uint32_t> monomial_order(int r, int m) {
  std::vector<std::uint32_t> out;
  std::vector<int> idx;
  auto emit = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      std::uint32_t s = 0;
      for (int i : idx) s |= 1U << i;
      out.push_back(s);
      return;
    }
    for (int i = start; i <= m - remaining; ++i) {
      idx.push_back(i);
      self(self, i + 1, remaining - 1);
      idx.pop_back();
    }
  };
  for (int deg = 0; deg <= std::min(r, m); ++deg) emit(emit, 0, deg);
  return out;
}

/// Generator of RM(r, m) whose rows are the indicator vectors of the
/// coordinate subspaces {x : x_i = 0 for all i in S}, |S| <= r, in
/// monomial_order. For r = 1 this is the familiar
/// [1111 1111; 1010 1010; 1100 1100; 1111 0000] layout.
[[nodiscard]] inline Gf2Matrix generator_matrix(int r, int m) {
  const RmCode code = rm_params(r, m);
  std::vector<BitVector> rows;
  rows.reserve(code.k);
  for (std::uint32_t subset : monomial_order(r, m)) {
    BitVector row(code.n);
    for (std::size_t j = 0; j < code.n; ++j) {
      if ((j & subset) == 0) row.set(j);
    }
    rows.push_back(std::move(row));
  }
  return Gf2Matrix(code.n, std::move(rows));
}

/// G(r, m) = [G(r, m-1) G(r, m-1); 0 G(r-1, m-1)], G(0, m) = all-one row.
/// Orders above m are clamped to m (the full space).
[[nodiscard]] inline Gf2Matrix plotkin_generator_matrix(int r, int m) {
  if (r < 0 || m < 0 || m > kMaxLogLength) throw ParameterError("Plotkin generator needs r >= 0, 0 <= m <= 20");
  r = std::min(r, m);
  const std::size_t n = std::size_t{1} << m;
  if (r == 0) return Gf2Matrix(n, {BitVector::ones(n)});
  const Gf2Matrix top = plotkin_generator_matrix(r, m - 1);
  const Gf2Matrix bottom = plotkin_generator_matrix(r - 1, m - 1);
  std::vector<BitVector> rows;
  rows.reserve(top.row_count() + bottom.row_count());
  for (const auto& g : top.rows()) rows.push_back(BitVector::concat(g, g));
  const BitVector zero(n / 2);
  for (const auto& g : bottom.rows()) rows.push_back(BitVector::concat(zero, g));
  return Gf2Matrix(n, std::move(rows));
}

namespace detail {

// Storage bits (see BitVector) of the in-word indices j with (j & h) != 0.
inline constexpr std::array<BitVector::Word, 6> kAnfMasks = [] {
  std::array<BitVector::Word, 6> masks{};
  for (int lvl = 0; lvl < 6; ++lvl) {
    const unsigned h = 1U << lvl;
    for (unsigned j = 0; j < 64; ++j) {
      if (j & h) masks[static_cast<std::size_t>(lvl)] |= BitVector::Word{1} << (63 - j);
    }
  }
  return masks;
}();

}  // namespace detail

/// Coefficients of the algebraic normal form: bit S of the result is the
/// coefficient of prod_{i in S} x_i.
[[nodiscard]] inline BitVector anf_coefficients(const BitWord& word) {
  const std::size_t n = word.size();
  if (!is_power_of_two(n)) throw ParameterError("ANF needs a power-of-two word length");
  std::vector<BitVector::Word> w(word.words().begin(), word.words().end());
  for (int lvl = 0; lvl < 6 && (std::size_t{1} << lvl) < n; ++lvl) {
    const unsigned h = 1U << lvl;
    for (auto& x : w) x ^= (x >> h) & detail::kAnfMasks[static_cast<std::size_t>(lvl)];
  }
  for (std::size_t stride = 1; stride < w.size(); stride <<= 1) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i & stride) w[i] ^= w[i - stride];
    }
  }
  BitVector out(n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    BitVector::Word x = w[i];
    while (x != 0) {
      const int top = std::countl_zero(x);
      const std::size_t pos = i * 64 + static_cast<std::size_t>(top);
      if (pos < n) out.set(pos);
      x &= ~(BitVector::Word{1} << (63 - top));
    }
  }
  return out;
}

/// Degree of the multilinear polynomial evaluating to `word`; -1 for the
/// zero word.
[[nodiscard]] inline int anf_degree(const BitWord& word) {
  const BitVector coeffs = anf_coefficients(word);
  int deg = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs.test(i)) deg = std::max(deg, std::popcount(i));
  }
  return deg;
}

[[nodiscard]] inline bool is_codeword(const BitWord& word, const RmCode& code) {
  if (word.size() != code.n) throw ParameterError("word length does not match code length");
  return anf_degree(word) <= code.r;
}

/// k positions, containing `required`, whose generator columns are linearly
/// independent. Remaining positions are added greedily in increasing order.
[[nodiscard]] inline std::vector<std::size_t> choose_information_set(const RmCode& code,
                                                                     std::span<const std::size_t> required) {
  if (required.size() > code.k) {
    throw InfeasibleLabelError("more required positions (" + std::to_string(required.size()) +
                               ") than code dimension " + std::to_string(code.k));
  }
  const auto monomials = monomial_order(code.r, code.m);
  auto column = [&](std::size_t j) {
    BitVector c(code.k);
    for (std::size_t i = 0; i < monomials.size(); ++i) c.set(i, (j & monomials[i]) == 0);
    return c;
  };

  // basis[p] has its first set bit at p
  std::vector<std::optional<BitVector>> basis(code.k);
  auto insert = [&](BitVector v) {
    for (std::size_t p = v.find_first(); p < v.size(); p = v.find_first()) {
      if (!basis[p]) {
        basis[p] = std::move(v);
        return true;
      }
      v ^= *basis[p];
    }
    return false;
  };

  std::vector<bool> used(code.n, false);
  std::vector<std::size_t> chosen;
  chosen.reserve(code.k);
  for (std::size_t pos : required) {
    if (pos >= code.n) throw ParameterError("required position " + std::to_string(pos) + " outside code length");
    if (used[pos]) throw ParameterError("duplicate required position " + std::to_string(pos));
    used[pos] = true;
    if (!insert(column(pos))) {
      throw InfeasibleLabelError("generator column " + std::to_string(pos) +
                                 " depends on the other required columns");
    }
    chosen.push_back(pos);
  }
  for (std::size_t j = 0; j < code.n && chosen.size() < code.k; ++j) {
    if (!used[j] && insert(column(j))) chosen.push_back(j);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

/// Encoder whose generator is the identity on a fixed information set.
class SystematicEncoder {
 public:
  SystematicEncoder(const RmCode& code, std::vector<std::size_t> info_set)
      : code_(code), info_set_(std::move(info_set)) {
    if (info_set_.size() != code_.k) throw ParameterError("information set must have exactly k positions");
    if (!std::is_sorted(info_set_.begin(), info_set_.end()) ||
        std::adjacent_find(info_set_.begin(), info_set_.end()) != info_set_.end()) {
      throw ParameterError("information set must be strictly increasing");
    }
    if (!info_set_.empty() && info_set_.back() >= code_.n) throw ParameterError("information position out of range");

    const Gf2Matrix g = generator_matrix(code_.r, code_.m);
    rows_.assign(g.rows().begin(), g.rows().end());
    for (std::size_t i = 0; i < code_.k; ++i) {
      const std::size_t col = info_set_[i];
      std::size_t p = i;
      while (p < rows_.size() && !rows_[p].test(col)) ++p;
      if (p == rows_.size()) throw ParameterError("information set columns are linearly dependent");
      std::swap(rows_[i], rows_[p]);
      for (std::size_t q = 0; q < rows_.size(); ++q) {
        if (q != i && rows_[q].test(col)) rows_[q] ^= rows_[i];
      }
    }
  }

  [[nodiscard]] const RmCode& code() const noexcept { return code_; }
  [[nodiscard]] std::span<const std::size_t> info_set() const noexcept { return info_set_; }

  /// Codeword whose restriction to the information set equals `message`.
  [[nodiscard]] BitWord encode(const BitVector& message) const {
    if (message.size() != code_.k) throw ParameterError("message length must equal k");
    BitWord c(code_.n);
    for (std::size_t i = 0; i < code_.k; ++i) {
      if (message.test(i)) c ^= rows_[i];
    }
    return c;
  }

 private:
  RmCode code_;
  std::vector<std::size_t> info_set_;
  std::vector<BitVector> rows_;
};

[[nodiscard]] inline BitWord systematic_encode(const BitVector& message, const RmCode& code,
                                               std::span<const std::size_t> info_set) {
  return SystematicEncoder(code, {info_set.begin(), info_set.end()}).encode(message);
}

struct RmDecodeResult {
  BitWord codeword;
  bool ok = false;
};

/// Reed majority-logic decoding, highest degree first. The coefficient of
/// x_S is voted on by the 2^(m-|S|) sums of the word over the cosets of the
/// subcube spanned by S. The result is accepted only when it lies within
/// distance t of `word`.
[[nodiscard]] inline RmDecodeResult decode(const BitWord& word, const RmCode& code) {
  if (word.size() != code.n) throw ParameterError("word length does not match code length");
  const std::size_t n = code.n;
  std::vector<std::uint8_t> residual = word.to_bytes();
  std::vector<std::uint8_t> parity(n);
  const auto monomials = monomial_order(code.r, code.m);

  for (int deg = code.r; deg >= 0; --deg) {
    const std::size_t voters = std::size_t{1} << (code.m - deg);
    std::vector<std::uint32_t> chosen;
    for (std::uint32_t subset : monomials) {
      if (std::popcount(subset) != deg) continue;
      std::fill(parity.begin(), parity.end(), 0);
      for (std::size_t x = 0; x < n; ++x) parity[x & ~static_cast<std::size_t>(subset)] ^= residual[x];
      std::size_t ones = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if ((b & subset) == 0) ones += parity[b];
      }
      if (2 * ones > voters) chosen.push_back(subset);
    }
    for (std::uint32_t subset : chosen) {
      for (std::size_t x = 0; x < n; ++x) {
        if ((x & subset) == subset) residual[x] ^= 1U;
      }
    }
  }

  RmDecodeResult out;
  out.codeword = word ^ BitWord::from_bits(std::span<const std::uint8_t>(residual));
  out.ok = hamming_distance(out.codeword, word) <= code.t;
  return out;
}

}  // namespace rmstuck
