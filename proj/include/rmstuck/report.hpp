#pragma once

// Text and JSON-lines renderings of harness results.

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmstuck/harness.hpp"

namespace rmstuck {

inline void write_report_text(std::ostream& out, const VerificationReport& report) {
  for (const auto& r : report.records) {
    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.name << " s=" << r.s << " m=" << std::setw(3)
        << r.m << std::right << ' ' << r.measured << " (expected " << r.expected << ")\n";
  }
  out << report.records.size() - report.failures() << "/" << report.records.size() << " checks passed\n";
}

inline nlohmann::json to_json(const VerificationRecord& r) {
  return {{"check", r.name}, {"property", r.property}, {"s", r.s},
          {"m", r.m},        {"passed", r.passed},     {"measured", r.measured},
          {"expected", r.expected}, {"seconds", r.seconds}};
}

inline void write_report_jsonl(std::ostream& out, const VerificationReport& report) {
  for (const auto& r : report.records) out << to_json(r).dump() << '\n';
}

inline nlohmann::json to_json(const TableRow& row) {
  nlohmann::json j = {{"m", row.m},
                      {"s", row.s},
                      {"n", row.n},
                      {"mask_count", row.mask_count},
                      {"reference_mask_count", row.reference.mask_count},
                      {"mask_count_matches", row.mask_count_matches()},
                      {"lower_bound", row.lower_bound},
                      {"reference_lower_bound", row.reference.label_lower_bound},
                      {"lower_bound_matches", row.lower_bound_matches()},
                      {"lower_bound_closed_form", row.lower_bound_closed},
                      {"reference_label_size", row.reference.label_size},
                      {"upper_bound", label_upper_bound(row.s, row.mask_count)},
                      {"upper_bound_closed_form", label_upper_bound_closed(row.s, row.m)}};
  j["label_size"] = row.label_size ? nlohmann::json(*row.label_size) : nlohmann::json(nullptr);
  return j;
}

inline void write_table_text(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "   m  s      n   N_M(ref)   r_lb(ref) r_lb'  label(ref)  eq5   eq6\n";
  for (const auto& row : rows) {
    out << std::setw(4) << row.m << std::setw(3) << row.s << std::setw(7) << row.n << std::setw(6) << row.mask_count
        << '(' << std::setw(4) << row.reference.mask_count << ')' << (row.mask_count_matches() ? ' ' : '!')
        << std::setw(4) << row.lower_bound << '(' << std::setw(2) << row.reference.label_lower_bound << ')'
        << (row.lower_bound_matches() ? ' ' : '!') << std::setw(5) << row.lower_bound_closed << std::setw(6)
        << (row.label_size ? std::to_string(*row.label_size) : std::string("-")) << '(' << std::setw(2)
        << row.reference.label_size << ')' << std::setw(6) << label_upper_bound(row.s, row.mask_count) << std::setw(6)
        << label_upper_bound_closed(row.s, row.m) << '\n';
  }
}

inline void write_table_jsonl(std::ostream& out, const std::vector<TableRow>& rows) {
  for (const auto& row : rows) out << to_json(row).dump() << '\n';
}

inline nlohmann::json to_json(const SimStats& s) {
  return {{"trials", s.trials},
          {"frame_errors", s.frame_errors},
          {"uncorrectable", s.uncorrectable},
          {"label_misses", s.label_misses},
          {"wrong_messages", s.wrong_messages},
          {"seed", s.seed},
          {"stuck_model", s.stuck_model},
          {"error_model", s.error_model},
          {"error_weight_histogram", s.error_weight_histogram}};
}

}  // namespace rmstuck
