#pragma once

// Text formats: hex words, mask-set files, label files, stuck specs and
// plain (P1) portable bitmaps.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/labeling.hpp"
#include "rmstuck/mask_set.hpp"

namespace rmstuck {

/// ceil(len/4) hex digits; the first digit holds positions 0..3 with
/// position 0 as its most significant bit.
[[nodiscard]] inline std::string to_hex(const BitVector& word) {
  static constexpr std::string_view kDigits = "0123456789abcdef";
  std::vector<unsigned> nibbles((word.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word.test(i)) nibbles[i / 4] |= 8U >> (i % 4);
  }
  std::string out;
  out.reserve(nibbles.size());
  for (unsigned v : nibbles) out.push_back(kDigits[v]);
  return out;
}

/// Inverse of to_hex; an optional 0x prefix is accepted and padding bits
/// past `len` must be zero.
[[nodiscard]] inline BitVector from_hex(std::string_view text, std::size_t len) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.size() != (len + 3) / 4) {
    throw ParameterError("hex word needs " + std::to_string((len + 3) / 4) + " digits for " + std::to_string(len) +
                         " bits, got " + std::to_string(text.size()));
  }
  BitVector out(len);
  for (std::size_t d = 0; d < text.size(); ++d) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[d])));
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else {
      throw ParameterError("invalid hex digit '" + std::string(1, text[d]) + "'");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (!(v & (8U >> b))) continue;
      const std::size_t pos = d * 4 + b;
      if (pos >= len) throw ParameterError("hex word sets bits past the word length");
      out.set(pos);
    }
  }
  return out;
}

namespace detail {

inline std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParameterError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

// Reads "key=<value>" from a header token.
inline std::size_t header_field(std::istream& in, std::string_view key) {
  std::string token;
  if (!(in >> token) || token.rfind(std::string(key) + "=", 0) != 0) {
    throw IoError("malformed header: expected " + std::string(key) + "=<value>");
  }
  try {
    return parse_size(std::string_view(token).substr(key.size() + 1), key);
  } catch (const ParameterError& e) {
    throw IoError(e.what());
  }
}

inline void expect_token(std::istream& in, std::string_view want) {
  std::string token;
  if (!(in >> token) || token != want) throw IoError("malformed header: expected '" + std::string(want) + "'");
}

}  // namespace detail

/// "maskset v1 s=<s> m=<m> count=<N>" followed by one hex mask per line.
inline void write_mask_set(std::ostream& out, const MaskSet& set) {
  out << "maskset v1 s=" << set.multiplicity() << " m=" << set.log_length() << " count=" << set.size() << '\n';
  for (const auto& w : set) out << to_hex(w) << '\n';
}

[[nodiscard]] inline MaskSet read_mask_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty mask-set file");
  std::istringstream hs(header);
  detail::expect_token(hs, "maskset");
  detail::expect_token(hs, "v1");
  const auto s = static_cast<int>(detail::header_field(hs, "s"));
  const auto m = static_cast<int>(detail::header_field(hs, "m"));
  const std::size_t count = detail::header_field(hs, "count");
  if (m > kMaxLogLength) throw IoError("mask-set log-length too large");
  const std::size_t len = std::size_t{1} << m;
  std::vector<BitWord> masks;
  masks.reserve(count);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      masks.push_back(from_hex(line, len));
    } catch (const ParameterError& e) {
      throw IoError(std::string("bad mask line: ") + e.what());
    }
    if (masks.size() > 1 && !(masks[masks.size() - 2] < masks.back())) {
      throw IoError("mask-set file is not in canonical order");
    }
  }
  if (masks.size() != count) {
    throw IoError("mask-set header says " + std::to_string(count) + " masks, file has " + std::to_string(masks.size()));
  }
  return MaskSet(s, m, std::move(masks));
}

struct LabelFile {
  int s = 0;
  int m = 0;
  std::vector<std::size_t> positions;
};

/// "label v1 s=<s> m=<m> L=<L>" followed by the positions on one line.
inline void write_label(std::ostream& out, const Label& label) {
  out << "label v1 s=" << label.multiplicity() << " m=" << label.log_length() << " L=" << label.size() << '\n';
  const auto pos = label.positions();
  for (std::size_t i = 0; i < pos.size(); ++i) out << (i ? " " : "") << pos[i];
  out << '\n';
}

[[nodiscard]] inline LabelFile read_label(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty label file");
  std::istringstream hs(header);
  detail::expect_token(hs, "label");
  detail::expect_token(hs, "v1");
  LabelFile f;
  f.s = static_cast<int>(detail::header_field(hs, "s"));
  f.m = static_cast<int>(detail::header_field(hs, "m"));
  const std::size_t count = detail::header_field(hs, "L");
  std::string line;
  std::getline(in, line);
  std::istringstream ls(line);
  std::string token;
  while (ls >> token) {
    try {
      f.positions.push_back(detail::parse_size(token, "label position"));
    } catch (const ParameterError& e) {
      throw IoError(e.what());
    }
  }
  if (f.positions.size() != count) {
    throw IoError("label header says L=" + std::to_string(count) + ", file lists " + std::to_string(f.positions.size()));
  }
  return f;
}

/// Decimal positions separated by spaces and/or commas.
[[nodiscard]] inline std::vector<std::size_t> parse_positions(std::string_view text) {
  std::vector<std::size_t> out;
  std::string cleaned(text);
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) out.push_back(detail::parse_size(token, "position"));
  return out;
}

/// "pos:val" pairs separated by spaces and/or commas, e.g. "2:1 5:1".
[[nodiscard]] inline StuckPattern parse_stuck_spec(std::string_view text) {
  std::vector<StuckCell> cells;
  std::string cleaned(text);
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ParameterError("stuck cell '" + token + "' is not pos:val");
    const std::string_view tv(token);
    const std::size_t pos = detail::parse_size(tv.substr(0, colon), "stuck position");
    const std::string_view val = tv.substr(colon + 1);
    if (val != "0" && val != "1") throw ParameterError("stuck value must be 0 or 1 in '" + token + "'");
    cells.push_back({pos, val == "1"});
  }
  return StuckPattern(std::move(cells));
}

/// Plain PBM: one row per mask in canonical order, 1 = black.
inline void write_pbm(std::ostream& out, const MaskSet& set) {
  out << "P1\n# M(" << set.multiplicity() << "," << set.log_length() << ")\n"
      << set.word_length() << ' ' << set.size() << '\n';
  constexpr std::size_t kLineLimit = 70;
  for (const auto& w : set) {
    std::size_t col = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (col == kLineLimit) {
        out << '\n';
        col = 0;
      }
      out << (w.test(i) ? '1' : '0');
      ++col;
    }
    out << '\n';
  }
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

}  // namespace rmstuck
