#pragma once

// Labels: fixed codeword positions whose values identify the mask in use.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/mask_set.hpp"

namespace rmstuck {

namespace detail {

inline void check_positions(std::span<const std::size_t> sorted_positions, std::size_t word_length) {
  if (std::adjacent_find(sorted_positions.begin(), sorted_positions.end()) != sorted_positions.end()) {
    throw ParameterError("label positions must be distinct");
  }
  if (!sorted_positions.empty() && sorted_positions.back() >= word_length) {
    throw ParameterError("label position " + std::to_string(sorted_positions.back()) + " outside word of length " +
                         std::to_string(word_length));
  }
}

}  // namespace detail

/// True iff the masks of `set` restricted to `positions` are pairwise distinct.
[[nodiscard]] inline bool validate_label(const MaskSet& set, std::span<const std::size_t> positions) {
  std::vector<std::size_t> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  detail::check_positions(sorted, set.word_length());
  std::vector<BitVector> keys;
  keys.reserve(set.size());
  for (const auto& mask : set) keys.push_back(mask.restrict_to(sorted));
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

/// A validated label over one mask set, with the reverse lookup from label
/// bits to the mask's index in canonical order. Positions are kept sorted;
/// labels with the same position set are equal.
class Label {
 public:
  Label(const MaskSet& set, std::vector<std::size_t> positions)
      : s_(set.multiplicity()), m_(set.log_length()), positions_(std::move(positions)) {
    std::sort(positions_.begin(), positions_.end());
    detail::check_positions(positions_, set.word_length());
    entries_.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) entries_.emplace_back(set[i].restrict_to(positions_), i);
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i].first == entries_[i - 1].first) {
        throw LabelError("label positions do not distinguish all " + std::to_string(set.size()) + " masks of M(" +
                         std::to_string(s_) + "," + std::to_string(m_) + ")");
      }
    }
  }

  [[nodiscard]] int multiplicity() const noexcept { return s_; }
  [[nodiscard]] int log_length() const noexcept { return m_; }
  [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
  [[nodiscard]] std::span<const std::size_t> positions() const noexcept { return positions_; }

  [[nodiscard]] BitVector bits_of(const BitWord& word) const { return word.restrict_to(positions_); }

  /// Index of the mask whose label bits are `bits`, if any.
  [[nodiscard]] std::optional<std::size_t> lookup(const BitVector& bits) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), bits,
                               [](const auto& e, const BitVector& key) { return e.first < key; });
    if (it == entries_.end() || it->first != bits) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Label& a, const Label& b) {
    return a.s_ == b.s_ && a.m_ == b.m_ && a.positions_ == b.positions_;
  }

 private:
  int s_;
  int m_;
  std::vector<std::size_t> positions_;
  std::vector<std::pair<BitVector, std::size_t>> entries_;
};

/// 1 + ceil(log2(m + 1)): label size for M(2, m).
[[nodiscard]] inline int label_size_s2(int m) {
  if (m < 1) throw ParameterError("label_s2 needs m >= 1");
  return 1 + ceil_log2(static_cast<std::uint64_t>(m) + 1);
}

/// Label positions for M(2, m).
///
/// Row k = 1..m of the non-constant half is the coordinate x_{m-k}; it gets
/// the L-bit string binary(k), the complements take the complementary
/// strings and the constants keep 0...0 and 1...1. Position l_j is the column
/// whose binary digits (row 1 most significant) are the j-th characters of
/// binary(1), ..., binary(m).
[[nodiscard]] inline std::vector<std::size_t> label_s2_positions(int m) {
  if (m > kMaxLogLength) throw ParameterError("log-length m out of range");
  const int len = label_size_s2(m);
  std::vector<std::size_t> positions;
  positions.reserve(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) {
    std::size_t col = 0;
    for (int k = 1; k <= m; ++k) {
      const bool bit = (static_cast<unsigned>(k) >> (len - 1 - j)) & 1U;
      if (bit) col |= std::size_t{1} << (m - k);
    }
    positions.push_back(col);
  }
  std::sort(positions.begin(), positions.end());
  return positions;
}

[[nodiscard]] inline Label label_s2(const MaskSet& set) {
  if (set.multiplicity() != 2) throw ParameterError("label_s2 applies to M(2, m) only");
  return Label(set, label_s2_positions(set.log_length()));
}

[[nodiscard]] inline Label label_s2(int m) { return label_s2(build_mask_set(2, m)); }

/// (prod_{i=1}^m (2^L - 2i)) / L! with L = label_size_s2(m).
[[nodiscard]] inline std::uint64_t count_labels_s2(int m) {
  const int len = label_size_s2(m);
  using Wide = unsigned __int128;
  const Wide limit = Wide{std::numeric_limits<std::uint64_t>::max()} << 32;
  Wide num = 1;
  for (int i = 1; i <= m; ++i) {
    num *= static_cast<Wide>((std::uint64_t{1} << len) - 2 * static_cast<std::uint64_t>(i));
    if (num > limit) throw ParameterError("label count overflows for m=" + std::to_string(m));
  }
  Wide fact = 1;
  for (int i = 2; i <= len; ++i) fact *= static_cast<Wide>(i);
  if (num % fact != 0) throw ParameterError("label count is not an integer for m=" + std::to_string(m));
  const Wide q = num / fact;
  if (q > std::numeric_limits<std::uint64_t>::max()) throw ParameterError("label count overflows");
  return static_cast<std::uint64_t>(q);
}

/// 2^s (2 ceil(log2 N) - 1): size reached by the pair-elimination argument.
[[nodiscard]] inline std::uint64_t label_upper_bound(int s, std::size_t n_masks) {
  if (s < 1) throw ParameterError("label_upper_bound needs s >= 1");
  if (n_masks < 2) throw ParameterError("label_upper_bound needs at least two masks");
  return (std::uint64_t{1} << s) * (2 * static_cast<std::uint64_t>(ceil_log2(n_masks)) - 1);
}

/// 2^(s+1) ((s-1)(1 + ceil(log2 m)) - 1), the closed form via the count bound.
[[nodiscard]] inline std::int64_t label_upper_bound_closed(int s, int m) {
  if (s < 1 || m < 1) throw ParameterError("label_upper_bound_closed needs s >= 1 and m >= 1");
  const std::int64_t inner = static_cast<std::int64_t>(s - 1) * (1 + ceil_log2(static_cast<std::uint64_t>(m))) - 1;
  return (std::int64_t{1} << (s + 1)) * inner;
}

enum class LowerBoundVariant {
  /// 2^(s-2) L(2, m-s+2) with L(2, m') = 1 + ceil(log2(m'+1)).
  kRecursion,
  /// 2^(s-2) (1 + ceil(log2(m-s+2))), the closed form as usually quoted.
  kClosedForm,
};

/// Minimum label size implied by halving the problem s-2 times.
[[nodiscard]] inline std::uint64_t label_lower_bound(int s, int m,
                                                     LowerBoundVariant variant = LowerBoundVariant::kRecursion) {
  if (s < 2 || s > m) throw ParameterError("label_lower_bound needs 2 <= s <= m");
  const std::uint64_t reduced = static_cast<std::uint64_t>(m - s + 2);
  const std::uint64_t arg = variant == LowerBoundVariant::kRecursion ? reduced + 1 : reduced;
  return (std::uint64_t{1} << (s - 2)) * (1 + static_cast<std::uint64_t>(ceil_log2(arg)));
}

/// Greedy distinguishing-column search.
///
/// Masks with equal restriction to the columns chosen so far form a class;
/// each step picks the column separating the most same-class pairs (lowest
/// index on ties) and refines the classes, until every class is a singleton.
[[nodiscard]] inline Label greedy_label(const MaskSet& set) {
  const std::size_t count = set.size();
  const std::size_t n = set.word_length();
  if (count < 2) throw ParameterError("greedy_label needs at least two masks");

  std::vector<std::uint8_t> bits(count * n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = set[i].to_bytes();
    std::copy(row.begin(), row.end(), bits.begin() + static_cast<std::ptrdiff_t>(i * n));
  }

  std::vector<std::vector<std::uint32_t>> classes(1);
  classes[0].resize(count);
  for (std::size_t i = 0; i < count; ++i) classes[0][i] = static_cast<std::uint32_t>(i);

  std::vector<std::size_t> chosen;
  std::vector<std::uint64_t> score(n);
  std::vector<std::uint32_t> ones(n);
  while (!classes.empty()) {
    std::fill(score.begin(), score.end(), 0);
    for (const auto& cls : classes) {
      std::fill(ones.begin(), ones.end(), 0);
      for (std::uint32_t idx : cls) {
        const std::uint8_t* row = bits.data() + static_cast<std::size_t>(idx) * n;
        for (std::size_t c = 0; c < n; ++c) ones[c] += row[c];
      }
      const std::uint64_t size = cls.size();
      for (std::size_t c = 0; c < n; ++c) score[c] += std::uint64_t{ones[c]} * (size - ones[c]);
    }
    const auto best = static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());
    if (score[best] == 0) throw LabelError("mask set contains indistinguishable masks");
    chosen.push_back(best);

    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& cls : classes) {
      std::vector<std::uint32_t> zero;
      std::vector<std::uint32_t> one;
      for (std::uint32_t idx : cls) (bits[static_cast<std::size_t>(idx) * n + best] ? one : zero).push_back(idx);
      if (zero.size() > 1) next.push_back(std::move(zero));
      if (one.size() > 1) next.push_back(std::move(one));
    }
    classes = std::move(next);
  }

  if (chosen.size() > label_upper_bound(set.multiplicity(), count)) {
    throw LabelError("greedy label exceeds the pair-elimination bound");
  }
  return Label(set, std::move(chosen));
}

}  // namespace rmstuck
