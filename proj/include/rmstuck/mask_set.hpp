#pragma once

// Recursive defect-masking sets M(s, m).
//
// M(1, m) holds the all-zero and all-one words. M(s, ceil(log2 s)) holds
// every binary word of that length. Above the base level a set is the union
// of self-concatenations [w, w] for w in M(s, m-1) and of the cross
// concatenations [w1, w2] for w1 in M(i, m-1), w2 in M(s-i, m-1), 1 <= i < s.
// Any s stuck cells of a length-2^m word are covered by some member.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/errors.hpp"

namespace rmstuck {

/// Largest log-length accepted anywhere in the library (words of 2^20 bits).
inline constexpr int kMaxLogLength = 20;
/// Base level M(s, ceil(log2 s)) enumerates 2^(2^l) words, so s is capped.
inline constexpr int kMaxMultiplicity = 16;

struct StuckCell {
  std::size_t position = 0;
  bool value = false;

  friend bool operator==(const StuckCell&, const StuckCell&) = default;
};

/// Stuck-cell side information: distinct positions with their values.
class StuckPattern {
 public:
  StuckPattern() = default;
  StuckPattern(std::initializer_list<StuckCell> cells) : StuckPattern(std::vector<StuckCell>(cells)) {}
  explicit StuckPattern(std::vector<StuckCell> cells) : cells_(std::move(cells)) {
    std::vector<std::size_t> pos;
    pos.reserve(cells_.size());
    for (const auto& c : cells_) pos.push_back(c.position);
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
      throw ParameterError("stuck pattern has duplicate positions");
    }
  }

  [[nodiscard]] std::span<const StuckCell> cells() const noexcept { return cells_; }
  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }

  /// Throws unless every position is below `word_length`.
  void check_positions(std::size_t word_length) const {
    for (const auto& c : cells_) {
      if (c.position >= word_length) {
        throw ParameterError("stuck position " + std::to_string(c.position) + " outside word of length " +
                             std::to_string(word_length));
      }
    }
  }

 private:
  std::vector<StuckCell> cells_;
};

inline void check_mask_params(int s, int m) {
  if (s < 1) throw ParameterError("multiplicity s must be at least 1");
  if (s > kMaxMultiplicity) throw ParameterError("multiplicity s above " + std::to_string(kMaxMultiplicity));
  if (m < 0 || m > kMaxLogLength) throw ParameterError("log-length m out of range [0, 20]");
  if (ceil_log2(static_cast<std::uint64_t>(s)) > m) {
    throw ParameterError("need ceil(log2 s) <= m, got s=" + std::to_string(s) + " m=" + std::to_string(m));
  }
}

/// Immutable, deduplicated, lexicographically ordered M(s, m).
class MaskSet {
 public:
  /// Sorts and deduplicates `masks`; every mask must have length 2^m.
  MaskSet(int s, int m, std::vector<BitWord> masks, std::size_t pre_dedup_size = 0)
      : s_(s), m_(m), masks_(std::move(masks)) {
    const std::size_t len = std::size_t{1} << m;
    for (const auto& w : masks_) {
      if (w.size() != len) throw ParameterError("mask length does not match 2^m");
    }
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
    pre_dedup_size_ = pre_dedup_size == 0 ? masks_.size() : pre_dedup_size;
  }

  [[nodiscard]] int multiplicity() const noexcept { return s_; }
  [[nodiscard]] int log_length() const noexcept { return m_; }
  [[nodiscard]] std::size_t word_length() const noexcept { return std::size_t{1} << m_; }
  [[nodiscard]] std::size_t size() const noexcept { return masks_.size(); }
  [[nodiscard]] std::span<const BitWord> masks() const noexcept { return masks_; }
  [[nodiscard]] const BitWord& operator[](std::size_t i) const { return masks_[i]; }
  [[nodiscard]] auto begin() const noexcept { return masks_.begin(); }
  [[nodiscard]] auto end() const noexcept { return masks_.end(); }

  /// Size of the top-level union before duplicates were removed.
  [[nodiscard]] std::size_t pre_dedup_size() const noexcept { return pre_dedup_size_; }

  [[nodiscard]] std::optional<std::size_t> index_of(const BitWord& word) const {
    if (word.size() != word_length()) throw ParameterError("word length does not match mask set");
    auto it = std::lower_bound(masks_.begin(), masks_.end(), word);
    if (it == masks_.end() || *it != word) return std::nullopt;
    return static_cast<std::size_t>(it - masks_.begin());
  }

  [[nodiscard]] bool contains(const BitWord& word) const { return index_of(word).has_value(); }

 private:
  int s_;
  int m_;
  std::vector<BitWord> masks_;
  std::size_t pre_dedup_size_ = 0;
};

/// Builds mask sets with a memo table keyed by (s, m), so every sub-result
/// of the recursion is constructed once. Not thread-safe; the returned sets
/// are immutable and may be shared freely.
class MaskSetBuilder {
 public:
  std::shared_ptr<const MaskSet> build(int s, int m) {
    check_mask_params(s, m);
    const auto key = std::make_pair(s, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::size_t len = std::size_t{1} << m;
    std::vector<BitWord> masks;
    std::size_t raw = 0;
    if (s == 1) {
      masks = {BitWord(len), BitWord::ones(len)};
      raw = 2;
    } else if (m == ceil_log2(static_cast<std::uint64_t>(s))) {
      const std::uint64_t total = std::uint64_t{1} << len;
      masks.reserve(total);
      for (std::uint64_t v = 0; v < total; ++v) {
        BitWord w(len);
        for (std::size_t p = 0; p < len; ++p) w.set(p, (v >> (len - 1 - p)) & 1U);
        masks.push_back(std::move(w));
      }
      raw = masks.size();
    } else {
      const auto same = build(s, m - 1);
      for (const auto& w : *same) masks.push_back(BitWord::concat(w, w));
      for (int i = 1; i < s; ++i) {
        const auto left = build(i, m - 1);
        const auto right = build(s - i, m - 1);
        for (const auto& a : *left) {
          for (const auto& b : *right) masks.push_back(BitWord::concat(a, b));
        }
      }
      raw = masks.size();
    }
    auto set = std::make_shared<const MaskSet>(s, m, std::move(masks), raw);
    memo_.emplace(key, set);
    return set;
  }

  void clear() { memo_.clear(); }

 private:
  std::map<std::pair<int, int>, std::shared_ptr<const MaskSet>> memo_;
};

[[nodiscard]] inline MaskSet build_mask_set(int s, int m) {
  MaskSetBuilder builder;
  return *builder.build(s, m);
}

[[nodiscard]] inline std::size_t mask_count(int s, int m) {
  MaskSetBuilder builder;
  return builder.build(s, m)->size();
}

/// 2^s * m^(s-1).
[[nodiscard]] inline std::uint64_t count_upper_bound(int s, int m) {
  if (s < 1 || m < 1) throw ParameterError("count_upper_bound needs s >= 1 and m >= 1");
  std::uint64_t v = std::uint64_t{1} << s;
  for (int i = 1; i < s; ++i) v *= static_cast<std::uint64_t>(m);
  return v;
}

[[nodiscard]] inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

/// 2 * sum_{i=0}^{min(m, s-1)} C(m, i): rows of G(s-1, m) and their complements.
[[nodiscard]] inline std::uint64_t count_lower_bound(int s, int m) {
  if (s < 1 || m < 1) throw ParameterError("count_lower_bound needs s >= 1 and m >= 1");
  std::uint64_t sum = 0;
  for (int i = 0; i <= std::min(m, s - 1); ++i) sum += binomial(m, i);
  return 2 * sum;
}

[[nodiscard]] inline bool covers(const BitWord& mask, const StuckPattern& pattern) {
  for (const auto& c : pattern.cells()) {
    if (c.position >= mask.size()) throw ParameterError("pattern position outside mask");
    if (mask.test(c.position) != c.value) return false;
  }
  return true;
}

[[nodiscard]] inline bool is_member(const MaskSet& set, const BitWord& word) { return set.contains(word); }

namespace detail {

inline BitWord synthesize(std::span<const StuckCell> cells, int m) {
  const std::size_t len = std::size_t{1} << m;
  const std::size_t s = cells.size();
  if (s == 1) return cells.front().value ? BitWord::ones(len) : BitWord(len);
  if (m == ceil_log2(s)) {
    BitWord w(len);
    for (const auto& c : cells) w.set(c.position, c.value);
    return w;
  }
  const std::size_t half = len / 2;
  // cells are sorted by position, so the halves are contiguous runs
  const auto split = std::partition_point(cells.begin(), cells.end(),
                                          [half](const StuckCell& c) { return c.position < half; });
  std::vector<StuckCell> right(split, cells.end());
  for (auto& c : right) c.position -= half;
  const std::span<const StuckCell> left(cells.begin(), split);

  if (right.empty()) {
    BitWord w = synthesize(left, m - 1);
    return BitWord::concat(w, w);
  }
  if (left.empty()) {
    BitWord w = synthesize(right, m - 1);
    return BitWord::concat(w, w);
  }
  return BitWord::concat(synthesize(left, m - 1), synthesize(right, m - 1));
}

}  // namespace detail

/// Member of M(s, m) agreeing with `required` at every constrained position,
/// built by following the recursion instead of searching the set.
///
/// The recursion runs at multiplicity |required|, which stays inside M(s, m)
/// because M(s-1, m) is a subset of M(s, m). Free bits at a base level are 0;
/// an empty pattern gives the all-zero word.
[[nodiscard]] inline BitWord synthesize_mask(int s, int m, const StuckPattern& required) {
  check_mask_params(s, m);
  if (required.size() > static_cast<std::size_t>(s)) {
    throw ParameterError("pattern has " + std::to_string(required.size()) + " cells, multiplicity is " +
                         std::to_string(s));
  }
  const std::size_t len = std::size_t{1} << m;
  required.check_positions(len);
  if (required.empty()) return BitWord(len);

  std::vector<StuckCell> cells(required.cells().begin(), required.cells().end());
  std::sort(cells.begin(), cells.end(), [](const StuckCell& a, const StuckCell& b) { return a.position < b.position; });
  return detail::synthesize(cells, m);
}

}  // namespace rmstuck
