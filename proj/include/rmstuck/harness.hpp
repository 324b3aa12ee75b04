#pragma once

// Verification and experimentation on top of the library: exhaustive
// coverage checks, structural property checks over ranges of (s, m),
// reproduction of the reference mask-count/label table, and a seeded
// Monte Carlo channel.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/codec.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/labeling.hpp"
#include "rmstuck/mask_set.hpp"
#include "rmstuck/reed_muller.hpp"

namespace rmstuck {

/// Default limit on C(2^m, s) * 2^s for exhaustive coverage checks.
inline constexpr double kExhaustiveGuard = 1e7;

struct CoverageResult {
  int s = 0;
  int m = 0;
  std::uint64_t patterns = 0;  ///< position subsets times value assignments
  std::uint64_t covered = 0;
  double seconds = 0.0;

  [[nodiscard]] bool ok() const noexcept { return covered == patterns; }
};

[[nodiscard]] inline double coverage_check_size(int s, int m) {
  const double n = std::ldexp(1.0, m);
  double c = 1.0;
  for (int i = 0; i < s; ++i) c = c * (n - i) / (i + 1);
  return c * std::ldexp(1.0, s);
}

/// Checks that every s-subset of positions, under every value assignment, is
/// covered by some mask of M(s, m). For each subset the masks' restrictions
/// are collected and must hit all 2^s assignments.
[[nodiscard]] inline CoverageResult verify_coverage(int s, int m, bool ignore_guard = false,
                                                    MaskSetBuilder* builder = nullptr) {
  check_mask_params(s, m);
  const double estimate = coverage_check_size(s, m);
  if (!ignore_guard && estimate > kExhaustiveGuard) {
    std::ostringstream msg;
    msg << "exhaustive coverage check for s=" << s << " m=" << m << " needs about " << estimate
        << " pattern checks (limit " << kExhaustiveGuard << ")";
    throw ParameterError(msg.str());
  }
  const auto start = std::chrono::steady_clock::now();
  MaskSetBuilder local;
  const auto set = (builder != nullptr ? builder : &local)->build(s, m);
  const std::size_t n = set->word_length();
  const std::size_t count = set->size();
  if (static_cast<std::size_t>(s) > n) throw ParameterError("more stuck cells than positions");

  std::vector<std::uint8_t> bits(count * n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = set->masks()[i].to_bytes();
    std::copy(row.begin(), row.end(), bits.begin() + static_cast<std::ptrdiff_t>(i * n));
  }

  CoverageResult result;
  result.s = s;
  result.m = m;
  const std::size_t assignments = std::size_t{1} << s;
  std::vector<std::size_t> subset(static_cast<std::size_t>(s));
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  std::vector<std::uint8_t> seen(assignments);
  while (true) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t* row = bits.data() + i * n;
      std::size_t key = 0;
      for (std::size_t p : subset) key = (key << 1) | row[p];
      seen[key] = 1;
    }
    result.patterns += assignments;
    result.covered += static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), std::uint8_t{1}));

    // next combination in lexicographic order
    int i = s - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - static_cast<std::size_t>(s - i)) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

struct VerificationRecord {
  std::string name;      ///< check identifier, e.g. "count-upper-bound"
  std::string property;  ///< the claim being checked
  int s = 0;
  int m = 0;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<VerificationRecord> records;

  [[nodiscard]] bool all_passed() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed; });
  }
  [[nodiscard]] std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.passed; }));
  }
};

/// Structural checks for 1 <= s <= s_max, s <= m <= m_max (m >= 1):
/// count bounds, nesting M(s-1,m) in M(s,m), ANF degree <= s-1, and
/// containment of the generator rows of RM(s-1, m) with their complements.
/// Exhaustive coverage is added where it fits under the guard.
[[nodiscard]] inline VerificationReport verify_theorems(int s_max, int m_max, bool with_coverage = true,
                                                        MaskSetBuilder* builder = nullptr) {
  if (s_max < 1 || m_max < 1) throw ParameterError("verify needs s_max >= 1 and m_max >= 1");
  MaskSetBuilder local;
  MaskSetBuilder& b = builder != nullptr ? *builder : local;
  VerificationReport report;
  using Clock = std::chrono::steady_clock;
  auto add = [&](VerificationRecord rec, Clock::time_point t0) {
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report.records.push_back(std::move(rec));
  };

  for (int s = 1; s <= s_max; ++s) {
    for (int m = std::max(s, 1); m <= m_max; ++m) {
      auto t0 = Clock::now();
      const auto set = b.build(s, m);
      const std::uint64_t count = set->size();
      {
        const std::uint64_t ub = count_upper_bound(s, m);
        add({"count-upper-bound", "N_M(s,m) <= 2^s m^(s-1)", s, m, count <= ub, std::to_string(count),
             "<= " + std::to_string(ub)},
            t0);
      }
      t0 = Clock::now();
      {
        const std::uint64_t lb = count_lower_bound(s, m);
        add({"count-lower-bound", "N_M(s,m) >= 2 sum_{i<=min(m,s-1)} C(m,i)", s, m, count >= lb,
             std::to_string(count), ">= " + std::to_string(lb)},
            t0);
      }
      if (s >= 2) {
        t0 = Clock::now();
        const auto smaller = b.build(s - 1, m);
        std::size_t missing = 0;
        for (const auto& w : *smaller) {
          if (!set->contains(w)) ++missing;
        }
        add({"nesting", "M(s-1,m) subset of M(s,m)", s, m, missing == 0,
             std::to_string(smaller->size() - missing) + "/" + std::to_string(smaller->size()) + " contained",
             "all contained"},
            t0);
      }
      t0 = Clock::now();
      {
        int max_deg = -1;
        for (const auto& w : *set) max_deg = std::max(max_deg, anf_degree(w));
        add({"rm-membership", "every mask has ANF degree <= s-1", s, m, max_deg <= s - 1,
             "max degree " + std::to_string(max_deg), "<= " + std::to_string(s - 1)},
            t0);
      }
      t0 = Clock::now();
      {
        const Gf2Matrix g = plotkin_generator_matrix(s - 1, m);
        std::size_t found = 0;
        for (const auto& row : g.rows()) {
          if (set->contains(row)) ++found;
          if (set->contains(row.complement())) ++found;
        }
        const std::size_t want = 2 * g.row_count();
        add({"generator-containment", "rows of G(s-1,m) and complements are masks", s, m, found == want,
             std::to_string(found) + "/" + std::to_string(want), std::to_string(want) + "/" + std::to_string(want)},
            t0);
      }
      if (with_coverage && coverage_check_size(s, m) <= kExhaustiveGuard) {
        t0 = Clock::now();
        const CoverageResult cov = verify_coverage(s, m, false, &b);
        add({"coverage", "every s stuck cells are covered by some mask", s, m, cov.ok(),
             std::to_string(cov.covered) + "/" + std::to_string(cov.patterns), std::to_string(cov.patterns) + "/" +
                                                                                   std::to_string(cov.patterns)},
            t0);
      }
    }
  }
  return report;
}

/// Reference values: mask counts, label sizes found by an unspecified
/// search, and label lower bounds, for 3 <= m <= 12, 2 <= s <= min(4, m).
struct ReferenceRow {
  int m;
  int s;
  std::uint64_t mask_count;
  std::uint64_t label_size;
  std::uint64_t label_lower_bound;
};

inline constexpr std::array<ReferenceRow, 29> kReferenceTable = {{
    {3, 2, 8, 3, 3},      {3, 3, 34, 6, 6},      {4, 2, 10, 4, 4},      {4, 3, 60, 8, 6},
    {4, 4, 246, 14, 12},  {5, 2, 12, 4, 4},      {5, 3, 94, 9, 8},      {5, 4, 536, 19, 12},
    {6, 2, 14, 4, 4},     {6, 3, 136, 9, 8},     {6, 4, 996, 24, 16},   {7, 2, 16, 4, 4},
    {7, 3, 186, 10, 8},   {7, 4, 1666, 25, 16},  {8, 2, 18, 5, 5},      {8, 3, 244, 12, 8},
    {8, 4, 2586, 27, 16}, {9, 2, 20, 5, 5},      {9, 3, 310, 13, 10},   {9, 4, 3796, 31, 16},
    {10, 2, 22, 5, 5},    {10, 3, 384, 13, 10},  {10, 4, 5336, 31, 20}, {11, 2, 24, 5, 5},
    {11, 3, 466, 13, 10}, {11, 4, 7246, 32, 20}, {12, 2, 26, 5, 5},     {12, 3, 556, 14, 10},
    {12, 4, 9566, 33, 20},
}};

struct TableRow {
  int m = 0;
  int s = 0;
  std::size_t n = 0;
  std::uint64_t mask_count = 0;
  std::uint64_t lower_bound = 0;         ///< recursion variant
  std::uint64_t lower_bound_closed = 0;  ///< closed-form variant, reported only
  std::optional<std::uint64_t> label_size;  ///< s = 2 construction or greedy search
  ReferenceRow reference{};

  [[nodiscard]] bool mask_count_matches() const noexcept { return mask_count == reference.mask_count; }
  [[nodiscard]] bool lower_bound_matches() const noexcept { return lower_bound == reference.label_lower_bound; }
};

/// Recomputes every reference row. Label sizes come from label_s2 for s = 2
/// and greedy_label otherwise; they are reported, not compared.
[[nodiscard]] inline std::vector<TableRow> reproduce_table(bool with_labels = true, MaskSetBuilder* builder = nullptr) {
  MaskSetBuilder local;
  MaskSetBuilder& b = builder != nullptr ? *builder : local;
  std::vector<TableRow> rows;
  rows.reserve(kReferenceTable.size());
  for (const auto& ref : kReferenceTable) {
    TableRow row;
    row.m = ref.m;
    row.s = ref.s;
    row.n = std::size_t{1} << ref.m;
    row.reference = ref;
    const auto set = b.build(ref.s, ref.m);
    row.mask_count = set->size();
    row.lower_bound = label_lower_bound(ref.s, ref.m);
    row.lower_bound_closed = label_lower_bound(ref.s, ref.m, LowerBoundVariant::kClosedForm);
    if (with_labels) row.label_size = ref.s == 2 ? label_s2(*set).size() : greedy_label(*set).size();
    rows.push_back(row);
  }
  return rows;
}

enum class ErrorModel {
  kExactWeight,  ///< exactly `error_weight` distinct flipped positions
  kBinarySymmetric,  ///< each position flipped independently with `flip_probability`
};

struct SimConfig {
  std::uint64_t trials = 0;
  std::size_t stuck_count = 0;
  std::size_t error_weight = 0;
  ErrorModel model = ErrorModel::kExactWeight;
  double flip_probability = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SimStats {
  std::uint64_t trials = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t uncorrectable = 0;   ///< decoder reported failure
  std::uint64_t label_misses = 0;    ///< decoded label named no mask
  std::uint64_t wrong_messages = 0;  ///< decoded without complaint but wrong
  std::uint64_t seed = 0;
  std::string stuck_model;
  std::string error_model;
  /// error_weight_histogram[w] = trials whose error vector had weight w.
  std::vector<std::uint64_t> error_weight_histogram;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

namespace detail {

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// First `count` entries of a partial Fisher-Yates shuffle of 0..n-1.
inline std::vector<std::size_t> sample_positions(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                                 std::vector<std::size_t>& scratch) {
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(scratch[i], scratch[pick(rng)]);
  }
  return {scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(count)};
}

inline void run_trials(const Codec& codec, const SimConfig& cfg, std::uint64_t first, std::uint64_t last,
                       SimStats& stats) {
  const std::size_t n = codec.n();
  std::vector<std::size_t> scratch;
  for (std::uint64_t trial = first; trial < last; ++trial) {
    auto rng = trial_rng(cfg.seed, trial);
    std::bernoulli_distribution coin(0.5);

    BitVector user(codec.k_user());
    for (std::size_t i = 0; i < user.size(); ++i) user.set(i, coin(rng));

    std::vector<StuckCell> cells;
    for (std::size_t p : sample_positions(rng, n, cfg.stuck_count, scratch)) cells.push_back({p, coin(rng)});
    const BitWord written = codec.encode(user, StuckPattern(std::move(cells)));

    BitWord error(n);
    if (cfg.model == ErrorModel::kExactWeight) {
      for (std::size_t p : sample_positions(rng, n, cfg.error_weight, scratch)) error.set(p);
    } else {
      std::bernoulli_distribution flip(cfg.flip_probability);
      for (std::size_t p = 0; p < n; ++p) error.set(p, flip(rng));
    }
    ++stats.error_weight_histogram[error.count()];
    ++stats.trials;

    try {
      if (codec.decode(written ^ error) != user) {
        ++stats.wrong_messages;
        ++stats.frame_errors;
      }
    } catch (const LabelMissError&) {
      ++stats.label_misses;
      ++stats.frame_errors;
    } catch (const DecodeError&) {
      ++stats.uncorrectable;
      ++stats.frame_errors;
    }
  }
}

}  // namespace detail

/// Monte Carlo run of encode -> random errors -> decode. Trial i draws from
/// its own generator seeded by (seed, i), so the result does not depend on
/// the thread count.
[[nodiscard]] inline SimStats simulate(const Codec& codec, const SimConfig& cfg) {
  if (cfg.stuck_count > static_cast<std::size_t>(codec.multiplicity())) {
    throw ParameterError("stuck_count exceeds codec multiplicity");
  }
  if (cfg.model == ErrorModel::kExactWeight && cfg.error_weight > codec.n()) {
    throw ParameterError("error_weight exceeds code length");
  }
  if (cfg.model == ErrorModel::kBinarySymmetric && !(cfg.flip_probability >= 0.0 && cfg.flip_probability <= 1.0)) {
    throw ParameterError("flip probability must lie in [0, 1]");
  }

  auto fresh = [&] {
    SimStats s;
    s.seed = cfg.seed;
    s.error_weight_histogram.assign(codec.n() + 1, 0);
    s.stuck_model = "uniform " + std::to_string(cfg.stuck_count) + " distinct cells, uniform values";
    s.error_model = cfg.model == ErrorModel::kExactWeight
                        ? "exact weight " + std::to_string(cfg.error_weight)
                        : "binary symmetric p=" + std::to_string(cfg.flip_probability);
    return s;
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(std::max<std::uint64_t>(cfg.trials, 1))));
  std::vector<SimStats> partial(threads, fresh());
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (cfg.trials + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t first = std::min(cfg.trials, chunk * t);
    const std::uint64_t last = std::min(cfg.trials, first + chunk);
    if (t + 1 == threads) {
      detail::run_trials(codec, cfg, first, last, partial[t]);
    } else {
      workers.emplace_back([&, t, first, last] { detail::run_trials(codec, cfg, first, last, partial[t]); });
    }
  }
  for (auto& w : workers) w.join();

  SimStats total = fresh();
  for (const auto& p : partial) {
    total.trials += p.trials;
    total.frame_errors += p.frame_errors;
    total.uncorrectable += p.uncorrectable;
    total.label_misses += p.label_misses;
    total.wrong_messages += p.wrong_messages;
    for (std::size_t w = 0; w < p.error_weight_histogram.size(); ++w) {
      total.error_weight_histogram[w] += p.error_weight_histogram[w];
    }
  }
  return total;
}

}  // namespace rmstuck
