#pragma once

// Joint stuck-at masking and random-error correction on RM(r, m).
//
// Encoding: user bits fill the information positions that are not label
// positions; label positions are zero. The systematic encoder produces b, a
// mask from M(s, m) is synthesized so that b + mask matches every stuck cell,
// and b + mask is written. Because masks are codewords of RM(s-1, m), the
// written word is still a codeword of RM(r, m) for r >= s-1, and its label
// positions carry exactly the mask's label bits.
//
// Decoding: correct random errors, read the label bits, look up the mask,
// strip it, and read the user bits back from the information set.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/labeling.hpp"
#include "rmstuck/mask_set.hpp"
#include "rmstuck/reed_muller.hpp"

namespace rmstuck {

/// Intermediate values of one encoding, mostly for inspection and tests.
struct EncodeTrace {
  BitVector intermediate_message;  ///< k bits in information-set order
  BitWord intermediate_codeword;
  BitWord mask;
  BitWord codeword;
};

/// Immutable codec configuration; encode/decode are const and thread-safe.
class Codec {
 public:
  /// Uses `label_positions` when given (validated against M(s, m)),
  /// otherwise the s = 2 construction or the greedy search.
  Codec(int r, int m, int s, std::optional<std::vector<std::size_t>> label_positions = std::nullopt,
        MaskSetBuilder* builder = nullptr)
      : code_(checked_code(r, m, s)),
        s_(s),
        masks_(builder != nullptr ? builder->build(s, m) : MaskSetBuilder().build(s, m)),
        label_(make_label(*masks_, std::move(label_positions))),
        encoder_(code_, choose_information_set(code_, label_.positions())) {
    const auto info = encoder_.info_set();
    const auto label = label_.positions();
    for (std::size_t i = 0; i < info.size(); ++i) {
      if (std::binary_search(label.begin(), label.end(), info[i])) {
        label_slots_.push_back(i);
      } else {
        data_positions_.push_back(info[i]);
      }
    }
  }

  [[nodiscard]] const RmCode& code() const noexcept { return code_; }
  [[nodiscard]] int multiplicity() const noexcept { return s_; }
  [[nodiscard]] const MaskSet& mask_set() const noexcept { return *masks_; }
  [[nodiscard]] const Label& label() const noexcept { return label_; }
  [[nodiscard]] std::span<const std::size_t> info_set() const noexcept { return encoder_.info_set(); }
  /// Codeword positions carrying user bits, ascending.
  [[nodiscard]] std::span<const std::size_t> data_positions() const noexcept { return data_positions_; }

  [[nodiscard]] std::size_t n() const noexcept { return code_.n; }
  [[nodiscard]] std::size_t k_user() const noexcept { return data_positions_.size(); }
  /// Parity (n - k) plus label bits.
  [[nodiscard]] std::size_t redundancy() const noexcept { return code_.n - k_user(); }

  [[nodiscard]] EncodeTrace encode_trace(const BitVector& user, const StuckPattern& stuck) const {
    if (user.size() != k_user()) {
      throw ParameterError("user message must have " + std::to_string(k_user()) + " bits, got " +
                           std::to_string(user.size()));
    }
    if (stuck.size() > static_cast<std::size_t>(s_)) {
      throw CapacityError("capacity exceeded: " + std::to_string(stuck.size()) + " stuck cells, codec masks at most " +
                          std::to_string(s_));
    }
    stuck.check_positions(code_.n);

    EncodeTrace trace;
    trace.intermediate_message = BitVector(code_.k);
    std::size_t next = 0;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < code_.k; ++i) {
      if (slot < label_slots_.size() && label_slots_[slot] == i) {
        ++slot;
      } else {
        trace.intermediate_message.set(i, user.test(next++));
      }
    }
    trace.intermediate_codeword = encoder_.encode(trace.intermediate_message);

    std::vector<StuckCell> required;
    required.reserve(stuck.size());
    for (const auto& cell : stuck.cells()) {
      required.push_back({cell.position, cell.value != trace.intermediate_codeword.test(cell.position)});
    }
    trace.mask = synthesize_mask(s_, code_.m, StuckPattern(std::move(required)));
    trace.codeword = trace.intermediate_codeword ^ trace.mask;
    return trace;
  }

  [[nodiscard]] BitWord encode(const BitVector& user, const StuckPattern& stuck) const {
    return encode_trace(user, stuck).codeword;
  }

  /// Throws DecodeError when the read word is beyond the correction radius
  /// and LabelMissError when the decoded label bits name no mask.
  [[nodiscard]] BitVector decode(const BitWord& read) const {
    if (read.size() != code_.n) throw ParameterError("read word length does not match n");
    const RmDecodeResult rm = rmstuck::decode(read, code_);
    if (!rm.ok) throw DecodeError("uncorrectable: read word is not within distance t of a codeword");
    const auto idx = label_.lookup(label_.bits_of(rm.codeword));
    if (!idx) throw LabelMissError("decoded label bits match no mask");
    const BitWord intermediate = rm.codeword ^ (*masks_)[*idx];
    return intermediate.restrict_to(data_positions_);
  }

 private:
  static RmCode checked_code(int r, int m, int s) {
    check_mask_params(s, m);
    if (r < s - 1) throw ParameterError("masks of M(s,m) need RM order r >= s-1");
    return rm_params(r, m);
  }

  static Label make_label(const MaskSet& set, std::optional<std::vector<std::size_t>> positions) {
    if (positions) return Label(set, std::move(*positions));
    if (set.multiplicity() == 2 && set.log_length() >= 1) return label_s2(set);
    return greedy_label(set);
  }

  RmCode code_;
  int s_;
  std::shared_ptr<const MaskSet> masks_;
  Label label_;
  SystematicEncoder encoder_;
  std::vector<std::size_t> label_slots_;     // indices into the information set
  std::vector<std::size_t> data_positions_;  // codeword positions
};

[[nodiscard]] inline Codec new_codec(int r, int m, int s,
                                     std::optional<std::vector<std::size_t>> label_positions = std::nullopt) {
  return Codec(r, m, s, std::move(label_positions));
}

}  // namespace rmstuck
