#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rmstuck/rmstuck.hpp"
#include "rmstuck/report.hpp"

namespace {

using namespace rmstuck;

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParameter = 2,
  kCapacity = 3,
  kLabel = 4,
  kDecode = 5,
  kIo = 6,
};

struct CodecArgs {
  int r = 1;
  int m = 3;
  int s = 1;
  std::string label;
  std::string label_file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--r", r, "Reed-Muller order")->required();
    cmd->add_option("--m", m, "log2 of the code length")->required();
    cmd->add_option("--s", s, "number of stuck cells to mask")->required();
    auto* l = cmd->add_option("--label", label, "label positions, comma or space separated");
    cmd->add_option("--label-file", label_file, "label file written by `label --out`")->excludes(l);
  }

  [[nodiscard]] Codec build() const {
    std::optional<std::vector<std::size_t>> positions;
    if (!label.empty()) positions = parse_positions(label);
    if (!label_file.empty()) {
      auto in = open_input(label_file);
      LabelFile f = read_label(in);
      if (f.s != s || f.m != m) throw ParameterError("label file parameters do not match --s/--m");
      positions = std::move(f.positions);
    }
    return Codec(r, m, s, std::move(positions));
  }
};

std::shared_ptr<const MaskSet> load_or_build(const std::string& path, int s, int m) {
  if (!path.empty()) {
    auto in = open_input(path);
    return std::make_shared<const MaskSet>(read_mask_set(in));
  }
  return MaskSetBuilder().build(s, m);
}

void print_positions(std::ostream& out, std::span<const std::size_t> positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) out << (i ? " " : "") << positions[i];
  out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masking stuck-at cells with Reed-Muller codes"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  bool json = false;
  app.add_option("--threads", threads, "worker threads")->envname("RMSTUCK_THREADS")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "structured output (JSON lines)");

  int s = 2;
  int m = 3;
  std::string out_path;
  std::string masks_path;

  auto* masks = app.add_subcommand("masks", "build M(s,m) and print its size");
  masks->add_option("--s", s)->required();
  masks->add_option("--m", m)->required();
  masks->add_option("--out", out_path, "write the mask-set file");

  std::string method = "greedy";
  std::string positions_text;
  auto* label = app.add_subcommand("label", "construct or validate a label");
  label->add_option("--s", s);
  label->add_option("--m", m);
  label->add_option("--masks", masks_path, "mask-set file instead of --s/--m");
  label->add_option("--method", method)->check(CLI::IsMember({"exact-s2", "greedy", "validate"}));
  label->add_option("--positions", positions_text, "positions to validate");
  label->add_option("--out", out_path, "write the label file");

  CodecArgs codec_args;
  std::string message_text;
  std::string stuck_text;
  auto* encode = app.add_subcommand("encode", "mask stuck cells and encode a message");
  codec_args.add_to(encode);
  encode->add_option("--message", message_text, "user bits, e.g. 1101")->required();
  encode->add_option("--stuck", stuck_text, "stuck cells as pos:value, e.g. \"2:1 5:1\"");

  std::string word_text;
  auto* decode_cmd = app.add_subcommand("decode", "decode a read word");
  codec_args.add_to(decode_cmd);
  decode_cmd->add_option("--word", word_text, "read word in hex")->required();

  int s_max = 4;
  int m_max = 8;
  bool no_coverage = false;
  auto* verify = app.add_subcommand("verify", "check structural properties over a parameter range");
  verify->add_option("--s-max", s_max);
  verify->add_option("--m-max", m_max);
  verify->add_flag("--no-coverage", no_coverage, "skip the exhaustive coverage checks");

  bool no_labels = false;
  auto* table = app.add_subcommand("table", "recompute the reference table");
  table->add_flag("--no-labels", no_labels, "skip label construction");

  auto* render = app.add_subcommand("render", "draw M(s,m) as a PBM bitmap");
  render->add_option("--s", s);
  render->add_option("--m", m);
  render->add_option("--masks", masks_path, "mask-set file instead of --s/--m");
  render->add_option("--out", out_path, "output file (default stdout)");

  SimConfig sim;
  std::string model = "exact";
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo encode/corrupt/decode run");
  codec_args.add_to(simulate_cmd);
  simulate_cmd->add_option("--trials", sim.trials)->required();
  simulate_cmd->add_option("--stuck", sim.stuck_count, "stuck cells per trial");
  simulate_cmd->add_option("--errors", sim.error_weight, "flipped positions per trial");
  simulate_cmd->add_option("--model", model)->check(CLI::IsMember({"exact", "bsc"}));
  simulate_cmd->add_option("--p", sim.flip_probability, "flip probability for --model bsc");
  simulate_cmd->add_option("--seed", sim.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameter;
  }

  try {
    if (*masks) {
      const auto set = MaskSetBuilder().build(s, m);
      if (json) {
        std::cout << nlohmann::json{{"s", s}, {"m", m}, {"count", set->size()}, {"before_dedup", set->pre_dedup_size()}}
                  << '\n';
      } else {
        std::cout << "N=" << set->size() << '\n';
      }
      if (!out_path.empty()) {
        auto out = open_output(out_path);
        write_mask_set(out, *set);
      }
      return kOk;
    }

    if (*label) {
      const auto set = load_or_build(masks_path, s, m);
      if (method == "validate") {
        const auto pos = parse_positions(positions_text);
        const bool ok = validate_label(*set, pos);
        if (json) {
          std::cout << nlohmann::json{{"valid", ok}, {"size", pos.size()}} << '\n';
        } else {
          std::cout << (ok ? "valid" : "invalid") << '\n';
        }
        return ok ? kOk : kLabel;
      }
      if (method == "exact-s2" && set->multiplicity() != 2) throw ParameterError("exact-s2 needs s = 2");
      const Label lab = method == "exact-s2" ? label_s2(*set) : greedy_label(*set);
      if (json) {
        std::vector<std::size_t> pos(lab.positions().begin(), lab.positions().end());
        std::cout << nlohmann::json{{"s", set->multiplicity()}, {"m", set->log_length()}, {"size", lab.size()},
                                    {"positions", pos}}
                  << '\n';
      } else {
        std::cout << "L=" << lab.size() << '\n';
        print_positions(std::cout, lab.positions());
      }
      if (!out_path.empty()) {
        auto out = open_output(out_path);
        write_label(out, lab);
      }
      return kOk;
    }

    if (*encode) {
      const Codec codec = codec_args.build();
      const BitWord c = codec.encode(BitVector::from_string(message_text), parse_stuck_spec(stuck_text));
      if (json) {
        std::cout << nlohmann::json{{"hex", to_hex(c)}, {"bits", c.to_string()}} << '\n';
      } else {
        std::cout << "hex=" << to_hex(c) << "\nbits=" << c.to_string() << '\n';
      }
      return kOk;
    }

    if (*decode_cmd) {
      const Codec codec = codec_args.build();
      const BitVector u = codec.decode(from_hex(word_text, codec.n()));
      if (json) {
        std::cout << nlohmann::json{{"message", u.to_string()}} << '\n';
      } else {
        std::cout << "message=" << u.to_string() << '\n';
      }
      return kOk;
    }

    if (*verify) {
      const VerificationReport report = verify_theorems(s_max, m_max, !no_coverage);
      if (json) {
        write_report_jsonl(std::cout, report);
      } else {
        write_report_text(std::cout, report);
      }
      return report.all_passed() ? kOk : kVerifyFailed;
    }

    if (*table) {
      const auto rows = reproduce_table(!no_labels);
      if (json) {
        write_table_jsonl(std::cout, rows);
      } else {
        write_table_text(std::cout, rows);
      }
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const TableRow& r) { return r.mask_count_matches() && r.lower_bound_matches(); });
      return ok ? kOk : kVerifyFailed;
    }

    if (*render) {
      const auto set = load_or_build(masks_path, s, m);
      if (out_path.empty()) {
        write_pbm(std::cout, *set);
      } else {
        auto out = open_output(out_path);
        write_pbm(out, *set);
      }
      return kOk;
    }

    if (*simulate_cmd) {
      const Codec codec = codec_args.build();
      sim.threads = threads;
      sim.model = model == "bsc" ? ErrorModel::kBinarySymmetric : ErrorModel::kExactWeight;
      const SimStats stats = simulate(codec, sim);
      if (json) {
        std::cout << to_json(stats).dump() << '\n';
      } else {
        std::cout << "trials=" << stats.trials << " frame_errors=" << stats.frame_errors
                  << " uncorrectable=" << stats.uncorrectable << " label_misses=" << stats.label_misses
                  << " wrong=" << stats.wrong_messages << " seed=" << stats.seed << '\n';
      }
      return kOk;
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const LabelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLabel;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDecode;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  }
  return kOk;
}
