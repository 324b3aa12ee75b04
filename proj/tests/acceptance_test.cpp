// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rmstuck/rmstuck.hpp"

using namespace rmstuck;

namespace {

constexpr double kTableSecondsLimit = 300.0;
constexpr double kCoverageSecondsLimit = 10.0;
constexpr std::uint64_t kSimTrials = 10'000;

const std::vector<std::size_t> kLabel310 = {0, 2, 76, 112, 255, 339, 410, 421, 555, 662, 797, 870, 952};
const std::vector<std::size_t> kLabel36 = {0, 3, 14, 20, 25, 43, 50, 60, 63};
const std::vector<std::size_t> kLabel49 = {0,   40,  49,  63,  86,  88,  99,  106, 135, 154, 166,
                                           172, 205, 208, 233, 241, 246, 267, 284, 294, 306, 320,
                                           345, 357, 383, 405, 425, 439, 451, 462, 508};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!pass) ++failures;
}

MaskSetBuilder builder;

void table_counts() {
  const auto t0 = Clock::now();
  const auto rows = reproduce_table(true, &builder);
  const double secs = since(t0);
  std::size_t bad = 0;
  for (const auto& row : rows) {
    if (!row.mask_count_matches()) {
      ++bad;
      std::cout << "  m=" << row.m << " s=" << row.s << " count " << row.mask_count << " reference "
                << row.reference.mask_count << '\n';
    }
  }
  std::ostringstream d;
  d << rows.size() << " mask counts, " << bad << " mismatches, " << secs << " s (limit " << kTableSecondsLimit << ")";
  report(1, bad == 0 && secs <= kTableSecondsLimit, d.str());
}

void lower_bounds() {
  std::size_t bad = 0;
  std::size_t closed_differs = 0;
  for (const auto& ref : kReferenceTable) {
    const auto lb = label_lower_bound(ref.s, ref.m);
    const auto closed = label_lower_bound(ref.s, ref.m, LowerBoundVariant::kClosedForm);
    if (lb != ref.label_lower_bound) ++bad;
    if (closed != ref.label_lower_bound) {
      ++closed_differs;
      std::cout << "  closed form differs at m=" << ref.m << " s=" << ref.s << ": " << closed << " vs "
                << ref.label_lower_bound << '\n';
    }
  }
  std::ostringstream d;
  d << kReferenceTable.size() << " lower bounds, " << bad << " mismatches (closed form differs in " << closed_differs
    << " rows, reported only)";
  report(2, bad == 0, d.str());
}

void s2_labels() {
  std::size_t bad = 0;
  for (const auto& ref : kReferenceTable) {
    if (ref.s != 2) continue;
    const auto set = builder.build(2, ref.m);
    const Label label = label_s2(*set);
    if (label.size() != ref.label_size || !validate_label(*set, label.positions())) ++bad;
  }
  const Label l3 = label_s2(3);
  const bool exact = std::vector<std::size_t>(l3.positions().begin(), l3.positions().end()) ==
                     std::vector<std::size_t>{0, 3, 5};
  report(3, bad == 0 && exact,
         "s=2 label sizes match reference in all rows: " + std::string(bad == 0 ? "yes" : "no") +
             ", m=3 positions {0,3,5}: " + (exact ? "yes" : "no"));
}

void coverage() {
  bool ok = true;
  std::ostringstream d;
  for (auto [s, m] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}, std::pair{3, 4},
                      std::pair{4, 4}, std::pair{4, 5}}) {
    const CoverageResult r = verify_coverage(s, m, false, &builder);
    const bool pass = r.ok() && r.seconds < kCoverageSecondsLimit;
    ok = ok && pass;
    d << " (" << s << "," << m << ")=" << r.covered << "/" << r.patterns;
  }
  report(4, ok, "exhaustive coverage" + d.str());
}

void theorems() {
  const VerificationReport r = verify_theorems(4, 8, true, &builder);
  for (const auto& rec : r.records) {
    if (!rec.passed) std::cout << "  failed " << rec.name << " s=" << rec.s << " m=" << rec.m << '\n';
  }
  report(5, r.all_passed(),
         std::to_string(r.records.size()) + " property checks for s<=4, m<=8, " + std::to_string(r.failures()) +
             " failures");
}

void worked_example() {
  const Codec codec(2, 3, 2, std::vector<std::size_t>{0, 3, 5});
  const auto trace = codec.encode_trace(BitVector::from_bits({1, 1, 0, 1}), StuckPattern{{2, true}, {5, true}});
  const bool ok = trace.intermediate_message == BitVector::from_bits({0, 1, 1, 0, 0, 0, 1}) &&
                  trace.intermediate_codeword == BitWord::from_bits({0, 1, 1, 0, 0, 0, 1, 1}) &&
                  trace.mask == BitWord::from_bits({0, 0, 0, 0, 1, 1, 1, 1}) &&
                  trace.codeword == BitWord::from_bits({0, 1, 1, 0, 1, 1, 0, 0}) &&
                  codec.decode(trace.codeword) == BitVector::from_bits({1, 1, 0, 1});
  report(6, ok, "b=" + trace.intermediate_codeword.to_string() + " mask=" + trace.mask.to_string() +
                    " c=" + trace.codeword.to_string());
}

void published_labels() {
  const bool a = validate_label(*builder.build(3, 6), kLabel36);
  const bool b = validate_label(*builder.build(3, 10), kLabel310);
  const bool c = validate_label(*builder.build(4, 9), kLabel49);
  report(7, a && b && c,
         std::string("M(3,6) L=9 ") + (a ? "valid" : "invalid") + ", M(3,10) L=13 " + (b ? "valid" : "invalid") +
             ", M(4,9) L=31 " + (c ? "valid" : "invalid"));
}

void greedy_bounds() {
  bool ok = true;
  for (int s = 2; s <= 4; ++s) {
    for (int m = s; m <= 10; ++m) {
      const auto set = builder.build(s, m);
      const Label g = greedy_label(*set);
      const auto bound = label_upper_bound(s, set->size());
      const bool pass = g.size() <= bound && validate_label(*set, g.positions());
      ok = ok && pass;
      std::cout << "  s=" << s << " m=" << m << " greedy L=" << g.size() << " bound=" << bound;
      for (const auto& ref : kReferenceTable) {
        if (ref.s == s && ref.m == m) std::cout << " reference=" << ref.label_size;
      }
      std::cout << '\n';
    }
  }
  report(8, ok, "greedy labels valid and within the count-based upper bound for 2<=s<=4, s<=m<=10");
}

void simulations() {
  const unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  SimConfig a;
  a.trials = kSimTrials;
  a.stuck_count = 3;
  a.error_weight = 7;
  a.seed = 2024;
  a.threads = threads;
  const SimStats sa = simulate(Codec(2, 6, 3, kLabel36), a);

  SimConfig b = a;
  b.stuck_count = 4;
  b.error_weight = 31;
  const SimStats sb = simulate(Codec(3, 9, 4, kLabel49), b);
  report(9, sa.trials == kSimTrials && sa.frame_errors == 0 && sb.trials == kSimTrials && sb.frame_errors == 0,
         "RM(2,6) s=3 weight 7: " + std::to_string(sa.frame_errors) + "/" + std::to_string(sa.trials) +
             " frame errors; RM(3,9) s=4 weight 31: " + std::to_string(sb.frame_errors) + "/" +
             std::to_string(sb.trials));
}

void decoder_vs_brute_force() {
  bool ok = true;
  std::ostringstream d;
  for (auto [r, m] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{2, 4}}) {
    const RmCode code = rm_params(r, m);
    const auto words = oracle::rm_codewords(r, m);
    const std::uint32_t n = 1U << m;
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const auto near = oracle::nearest_codeword(static_cast<std::uint32_t>(x), words);
      if (near.distance > static_cast<int>(code.t)) continue;
      BitWord received(n);
      BitWord expected(n);
      for (std::uint32_t j = 0; j < n; ++j) {
        received.set(j, ((x >> j) & 1U) != 0);
        expected.set(j, ((near.word >> j) & 1U) != 0);
      }
      const RmDecodeResult res = decode(received, code);
      ++checked;
      if (!res.ok || res.codeword != expected) ++bad;
    }
    ok = ok && bad == 0;
    d << " RM(" << r << "," << m << ") " << checked - bad << "/" << checked;
  }
  report(10, ok, "majority logic equals nearest codeword within radius t:" + d.str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<void (*)()> steps = {table_counts, lower_bounds,  s2_labels,   coverage,    theorems,
                                         worked_example, published_labels, greedy_bounds, simulations,
                                         decoder_vs_brute_force};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      steps[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << " in " << since(t0) << " s\n";
  return failures == 0 ? 0 : 1;
}
