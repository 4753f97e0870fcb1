#include "evote/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "evote/authority.hpp"
#include "evote/board.hpp"
#include "evote/encoding.hpp"
#include "evote/error.hpp"
#include "evote/json_io.hpp"
#include "evote/simulation.hpp"
#include "evote/verification.hpp"

namespace evote::cli {
namespace fs = std::filesystem;

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw IoError("cannot write " + path.string());
  outf.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!outf) throw IoError("failed writing " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const fs::path& path) { return parse_json_text(read_file(path)); }

// nlohmann reports missing keys and type mismatches as json::exception.
template <class T>
T read_as(const fs::path& path) {
  const json j = read_json(path);
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// Accepts either a bare election config or a scenario config wrapping one.
ElectionConfig read_election(const fs::path& path) {
  const json j = read_json(path);
  try {
    ElectionConfig config = j.contains("election") ? j.at("election").get<ElectionConfig>()
                                                   : j.get<ElectionConfig>();
    config.validate();
    return config;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

PublicKey read_public_key(const fs::path& path) {
  const json j = read_json(path);
  try {
    return (j.contains("public_key") && j.at("public_key").is_object())
               ? j.at("public_key").get<PublicKey>()
               : j.get<PublicKey>();
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string receipt_stem(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", index + 1);
  return buf;
}

// Published minus B without the negativity check, for rendering broken boards.
Results raw_results(const Board& board, const ElectionConfig& config) {
  Results results;
  for (const auto& c : config.candidates) {
    const auto n = std::count_if(board.entries().begin(), board.entries().end(),
                                 [&](const Pairing& p) { return p.choice == c; });
    results.candidates.push_back(
        {c, n, n - static_cast<std::int64_t>(config.bootstrap_per_candidate)});
  }
  return results;
}

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "text";
  std::string receipt;
  std::string board;
  std::string machine_pub;
  std::string batch;
  std::string authority_key;
  std::string receipts_dir;
  std::string order_file;
};

int cmd_run(const Options& o, std::ostream& out) {
  ScenarioConfig config = read_as<ScenarioConfig>(o.config);
  if (o.seed) config.seed = *o.seed;
  const SimulationTrace trace = run_scenario(config);
  const DetectionReport detection = evaluate_detection(trace);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir / "receipts");

  std::string order;
  for (const auto& voter : trace.voters) {
    const std::string stem = receipt_stem(voter.index);
    write_file(dir / "receipts" / (stem + ".json"), dump(json(voter.receipt)));
    write_file(dir / "receipts" / (stem + ".txt"), render_receipt_text(voter.receipt));
    order += stem + ".json\n";
  }
  write_file(dir / "order.txt", order);

  if (trace.board) {
    write_file(dir / "board.json", dump(board_to_json(*trace.board)));
    const Results shown = trace.results ? *trace.results : raw_results(*trace.board, config.election);
    write_file(dir / "board.txt", render_board_text(*trace.board, shown));
  }
  if (trace.results) write_file(dir / "results.json", dump(json(*trace.results)));

  json authority{{"bootstrap_deltas", nullptr},
                 {"check", trace.authority_check ? json(*trace.authority_check) : json(nullptr)},
                 {"record_destroyed", trace.authority_record_destroyed}};
  if (trace.bootstrap_deltas) {
    json deltas = json::array();
    for (const auto& d : *trace.bootstrap_deltas) deltas.push_back({{"choice", d.choice}, {"delta", d.delta}});
    authority["bootstrap_deltas"] = deltas;
  }
  write_file(dir / "authority_report.json", dump(authority));

  json audit = trace.audit ? json(*trace.audit) : json{{"verdict", "not_available"}};
  for (const auto& e : trace.events) {
    if (e.kind == "missing_votes" || e.kind == "voter_roll_mismatch") {
      audit = json{{"verdict", e.kind}, {"detail", e.detail}};
    }
  }
  write_file(dir / "audit_report.json", dump(audit));
  write_file(dir / "detection_report.json", dump(json(detection)));
  if (trace.coercion) write_file(dir / "coercion_report.json", dump(json(*trace.coercion)));
  write_file(dir / "trace.json", dump(json(trace)));

  write_file(dir / "machine_public_key.json", dump(json(trace.machine_keys.public_key)));
  write_file(dir / "authority_key.json", dump(json{{"public_key", trace.authority_keys.public_key},
                                                   {"secret_key", trace.authority_keys.secret_key}}));
  write_file(dir / "bootstrap_batch.json", dump(json(trace.bootstrap_ciphertext)));

  out << "voters: " << trace.voters.size() << "\n";
  if (trace.board) out << "board entries: " << trace.board->entries().size() << "\n";
  out << "detection events: " << trace.events.size() << "\n";
  for (const auto& e : trace.events) out << "  " << e.kind << ": " << e.detail << "\n";
  return trace.events.empty() ? kExitClean : kExitIntegrity;
}

int cmd_verify_receipt(const Options& o, std::ostream& out) {
  const Receipt receipt = read_as<Receipt>(o.receipt);
  const Board board = board_from_json(read_json(o.board));
  const PublicKey machine_pub = read_public_key(o.machine_pub);

  const bool authentic = verify_receipt_signature(receipt, machine_pub);
  const auto statuses = check_receipt_against_board(receipt, board);
  const bool consistent = std::all_of(statuses.begin(), statuses.end(), [](const auto& s) {
    return s.state == PairingState::confirmed;
  });

  if (o.format == "json") {
    out << dump(json{{"signature_valid", authentic}, {"pairings", statuses}});
  } else {
    out << "signature: " << (authentic ? "valid" : "INVALID") << "\n";
    for (const auto& s : statuses) {
      out << s.pairing.choice << ' ' << s.pairing.id.digits() << ' ' << to_string(s.state);
      if (s.found_choice) out << " (found under " << *s.found_choice << ')';
      out << "\n";
    }
  }
  if (!authentic) return kExitAuthenticity;
  return consistent ? kExitClean : kExitIntegrity;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const Board board = board_from_json(read_json(o.board));
  const ElectionConfig config = read_election(o.config);
  try {
    const AuditReport report = audit_counts(board, config);
    out << dump(json(report));
    return report.verdict == AuditVerdict::clean ? kExitClean : kExitIntegrity;
  } catch (const MissingVotes& e) {
    out << dump(json{{"verdict", "missing_votes"}, {"shortfall", e.shortfall()}});
  } catch (const VoterRollMismatch& e) {
    out << dump(json{{"verdict", "voter_roll_mismatch"}, {"detail", e.what()}});
  }
  return kExitIntegrity;
}

int cmd_authority_check(const Options& o, std::ostream& out) {
  const Ciphertext ciphertext = read_as<Ciphertext>(o.batch);
  const PublicKey machine_pub = read_public_key(o.machine_pub);
  const json key_json = read_json(o.authority_key);
  SecretKey secret;
  try {
    secret = key_json.contains("secret_key") && key_json.at("secret_key").is_object()
                 ? key_json.at("secret_key").get<SecretKey>()
                 : key_json.get<SecretKey>();
  } catch (const json::exception& e) {
    throw ParseError(o.authority_key + ": " + e.what());
  }
  const Board board = board_from_json(read_json(o.board));
  const ElectionConfig config = read_election(o.config);

  std::optional<BootstrapRecord> record;
  try {
    record = receive_batch(ciphertext, machine_pub, secret, config, config.header.date);
  } catch (const BootstrapCountMismatch& e) {
    json deltas = json::array();
    for (const auto& d : e.deltas()) deltas.push_back({{"choice", d.choice}, {"delta", d.delta}});
    out << dump(json{{"verdict", "count_mismatch"}, {"deltas", deltas}});
    return kExitIntegrity;
  } catch (const MalformedBatch& e) {
    out << dump(json{{"verdict", "malformed_batch"}, {"detail", e.what()}});
    return kExitIntegrity;
  } catch (const BadSignature& e) {
    out << dump(json{{"verdict", "bad_signature"}, {"detail", e.what()}});
    return kExitAuthenticity;
  } catch (const CryptoError& e) {
    out << dump(json{{"verdict", "decryption_failed"}, {"detail", e.what()}});
    return kExitAuthenticity;
  }
  const CheckReport report = end_of_day_check(*record, board);
  destroy(*record);
  out << dump(json(report));
  return report.clean() ? kExitClean : kExitIntegrity;
}

int cmd_coerce(const Options& o, std::ostream& out) {
  const fs::path dir(o.receipts_dir);
  std::vector<std::string> names;
  std::istringstream order(read_file(o.order_file));
  for (std::string line; std::getline(order, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) names.push_back(line);
  }
  std::vector<Receipt> receipts;
  for (const auto& name : names) receipts.push_back(read_as<Receipt>(dir / name));

  const CoercionInference inference = coercion_infer(receipts);
  if (o.format == "json") {
    json j = inference;
    for (auto& s : j["statements"]) {
      s["receipt"] = names[s["voter_index"].get<std::size_t>()];
      s["evidence_receipt"] = names[s["evidence_index"].get<std::size_t>()];
    }
    out << dump(j);
  } else {
    out << "statements: " << inference.statements.size() << "\n";
    for (const auto& s : inference.statements) {
      out << names[s.voter_index] << " " << CoercionStatement::polarity << " " << s.choice
          << " (id already on " << names[s.evidence_index] << ")\n";
    }
  }
  return kExitClean;
}

int cmd_show_board(const Options& o, std::ostream& out) {
  const Board board = board_from_json(read_json(o.board));
  const ElectionConfig config = read_election(o.config);
  const Results results = tally(board, config);
  if (o.format == "json") {
    out << dump(json{{"board", board_to_json(board)}, {"results", results}});
  } else {
    out << render_board_text(board, results);
  }
  return kExitClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Receipt-based e-voting protocol: simulate, publish, audit and verify"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* run_cmd = app.add_subcommand("run", "Simulate an election day and write every artifact");
  run_cmd->add_option("--config", o.config, "Scenario config (JSON)")->required();
  run_cmd->add_option("--seed", o.seed, "Override the scenario seed");
  run_cmd->add_option("--out", o.out_dir, "Output directory")->required();

  auto* verify_cmd = app.add_subcommand("verify-receipt", "Check a receipt against a board");
  verify_cmd->add_option("--receipt", o.receipt)->required();
  verify_cmd->add_option("--board", o.board)->required();
  verify_cmd->add_option("--machine-pub", o.machine_pub)->required();
  add_format(verify_cmd);

  auto* audit_cmd = app.add_subcommand("audit", "Compare board entries with signings");
  audit_cmd->add_option("--board", o.board)->required();
  audit_cmd->add_option("--config", o.config, "Election or scenario config")->required();

  auto* authority_cmd =
      app.add_subcommand("authority-check", "Open a bootstrap batch and check it against a board");
  authority_cmd->add_option("--batch", o.batch)->required();
  authority_cmd->add_option("--board", o.board)->required();
  authority_cmd->add_option("--config", o.config)->required();
  authority_cmd->add_option("--machine-pub", o.machine_pub)->required();
  authority_cmd->add_option("--authority-key", o.authority_key)->required();

  auto* coerce_cmd = app.add_subcommand("coerce", "Infer what collected receipts leak");
  coerce_cmd->add_option("--receipts", o.receipts_dir)->required();
  coerce_cmd->add_option("--order", o.order_file, "Receipt file names in casting order")->required();
  add_format(coerce_cmd);

  auto* show_cmd = app.add_subcommand("show-board", "Render a board with its results");
  show_cmd->add_option("--board", o.board)->required();
  show_cmd->add_option("--config", o.config)->required();
  add_format(show_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(o, out);
    if (*verify_cmd) return cmd_verify_receipt(o, out);
    if (*audit_cmd) return cmd_audit(o, out);
    if (*authority_cmd) return cmd_authority_check(o, out);
    if (*coerce_cmd) return cmd_coerce(o, out);
    if (*show_cmd) return cmd_show_board(o, out);
  } catch (const TallyInconsistency& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace evote::cli
