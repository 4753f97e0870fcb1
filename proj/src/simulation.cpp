#include "evote/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "evote/error.hpp"

namespace evote {

void ScenarioConfig::validate() const {
  election.validate();
  const std::size_t m = election.candidates.size();
  if (num_voters > election.registered_voters) {
    throw ConfigError("num_voters exceeds registered_voters");
  }
  if (scripted_choices) {
    if (scripted_choices->size() != num_voters) {
      throw ConfigError("scripted_choices must list one selection set per voter");
    }
    for (const auto& sel : *scripted_choices) {
      if (sel.size() != election.selections_per_voter) {
        throw ConfigError("scripted selection set has the wrong size");
      }
      std::unordered_set<std::string> seen;
      for (const auto& s : sel) {
        if (!election.position(s)) throw ConfigError("scripted choice '" + s + "' is not a candidate");
        if (!seen.insert(s).second) throw ConfigError("scripted choice '" + s + "' repeated");
      }
    }
    return;
  }
  if (voter_choice_distribution.size() != m) {
    throw ConfigError("voter_choice_distribution needs one weight per candidate");
  }
  double total = 0.0;
  for (double w : voter_choice_distribution) {
    if (!(w >= 0.0)) throw ConfigError("voter_choice_distribution weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw ConfigError("voter_choice_distribution weights are all zero");
}

std::vector<std::int64_t> SimulationTrace::ground_truth_histogram() const {
  std::vector<std::int64_t> counts(config.election.candidates.size(), 0);
  for (const auto& v : voters) {
    for (const auto& s : v.selections) ++counts[*config.election.position(s)];
  }
  return counts;
}

namespace {

// k distinct choices, each drawn by weight from those not yet taken.
std::vector<std::string> sample_selections(RandomSource& rng, const ScenarioConfig& config) {
  const auto& candidates = config.election.candidates;
  std::vector<std::size_t> open(candidates.size());
  for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
  std::vector<std::size_t> picked;
  for (std::uint64_t n = 0; n < config.election.selections_per_voter; ++n) {
    std::vector<double> weights;
    for (std::size_t c : open) weights.push_back(config.voter_choice_distribution[c]);
    const std::size_t at = rng.pick_weighted(weights);
    picked.push_back(open[at]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(at));
  }
  std::sort(picked.begin(), picked.end());
  std::vector<std::string> out;
  for (std::size_t c : picked) out.push_back(candidates[c]);
  return out;
}

std::string voter_name(std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "voter-%04llu", static_cast<unsigned long long>(n + 1));
  return buf;
}

std::string describe(const std::vector<CountDelta>& deltas) {
  std::string out;
  for (const auto& d : deltas) {
    if (!out.empty()) out += ' ';
    out += d.choice + ':' + (d.delta > 0 ? "+" : "") + std::to_string(d.delta);
  }
  return out;
}

}  // namespace

SimulationTrace run_scenario(const ScenarioConfig& config) {
  config.validate();
  SimulationTrace trace;
  trace.config = config;
  auto event = [&](std::string kind, std::string detail) {
    trace.events.push_back({std::move(kind), std::move(detail)});
  };

  auto key_rng = RandomSource::stream(config.seed, streams::kMachineKeys);
  trace.machine_keys = signature_scheme(config.signature_scheme).keygen(key_rng);
  auto authority_rng = RandomSource::stream(config.seed, streams::kAuthorityKeys);
  trace.authority_keys = encryption_scheme(config.encryption_scheme).keygen(authority_rng);

  auto opening = VotingMachine::start_of_day(
      config.election, trace.machine_keys, trace.authority_keys.public_key, config.behavior,
      RandomSource::stream(config.seed, streams::kMachine));
  VotingMachine& machine = opening.machine;
  trace.bootstrap_ciphertext = opening.bootstrap_ciphertext;

  // Authority side of start of day. It only ever sees the ciphertext.
  std::optional<BootstrapRecord> record;
  try {
    record = receive_batch(trace.bootstrap_ciphertext, trace.machine_keys.public_key,
                           trace.authority_keys.secret_key, config.election,
                           config.election.header.date);
  } catch (const BootstrapCountMismatch& e) {
    trace.bootstrap_deltas = e.deltas();
    event("bootstrap_count_mismatch", describe(e.deltas()));
  } catch (const Error& e) {
    event("bootstrap_batch_rejected", e.what());
  }

  auto voter_rng = RandomSource::stream(config.seed, streams::kVoters);
  for (std::uint64_t v = 0; v < config.num_voters; ++v) {
    std::vector<std::string> selections =
        config.scripted_choices ? (*config.scripted_choices)[v] : sample_selections(voter_rng, config);
    const Session& session = machine.begin_session();
    VoterRecord voter;
    voter.index = trace.voters.size();
    voter.assigned_ids = session.assigned_ids;
    try {
      machine.make_choice(selections);
    } catch (const BootstrapProblem& e) {
      event("bootstrap_problem", "voter " + std::to_string(v) + ": " + e.what());
      machine.abandon();
      continue;
    }
    voter.selections = machine.session()->selections;
    voter.receipt = machine.validate();
    trace.voters.push_back(std::move(voter));
  }

  trace.submission = machine.close_of_day();
  if (config.publish_voter_names) {
    std::vector<std::string> names;
    for (std::uint64_t n = 0; n < trace.submission.signings_count; ++n) names.push_back(voter_name(n));
    trace.submission.voter_names = std::move(names);
  }

  try {
    trace.board = publish(trace.submission);
  } catch (const BoardError& e) {
    event("publish_rejected", e.what());
  }

  if (trace.board) {
    const Board& board = *trace.board;
    try {
      trace.results = tally(board, config.election);
    } catch (const TallyInconsistency& e) {
      event("tally_inconsistent", e.what());
    }

    if (record) {
      trace.authority_check = end_of_day_check(*record, board);
      if (!trace.authority_check->clean()) {
        event("bootstrap_not_on_board",
              std::to_string(trace.authority_check->missing.size()) + " missing, " +
                  std::to_string(trace.authority_check->moved.size()) + " moved");
      }
      if (config.authority_destroys_record) {
        destroy(*record);
        trace.authority_record_destroyed = true;
      }
    }

    try {
      trace.audit = audit_counts(board, config.election);
      if (trace.audit->verdict == AuditVerdict::surplus_detected) {
        event("surplus_detected", "surplus " + std::to_string(trace.audit->surplus));
      }
      if (trace.results) trace.results = apply_adjustment(*trace.results, *trace.audit);
    } catch (const MissingVotes& e) {
      event("missing_votes", e.what());
    } catch (const VoterRollMismatch& e) {
      event("voter_roll_mismatch", e.what());
    }

    for (auto& voter : trace.voters) {
      if (!verify_receipt_signature(voter.receipt, trace.machine_keys.public_key)) {
        event("receipt_signature_invalid", "voter " + std::to_string(voter.index));
      }
      voter.board_check = check_receipt_against_board(voter.receipt, board);
      for (const auto& status : voter.board_check) {
        if (status.state != PairingState::confirmed) {
          event("receipt_discrepancy", "voter " + std::to_string(voter.index) + " " +
                                           status.pairing.choice + " " +
                                           status.pairing.id.digits() + " " +
                                           std::string(to_string(status.state)));
        }
      }
    }
  }

  if (config.collect_receipts && config.coercer_knows_order) {
    std::vector<Receipt> receipts;
    receipts.reserve(trace.voters.size());
    for (const auto& v : trace.voters) receipts.push_back(v.receipt);
    trace.coercion = coercion_infer(receipts);
  }
  return trace;
}

CoercionInference coercion_infer(std::span<const Receipt> receipts) {
  CoercionInference inference;
  std::unordered_map<VoterId, std::size_t, VoterIdHash> first_seen;
  for (std::size_t j = 0; j < receipts.size(); ++j) {
    for (const auto& p : receipts[j].body.pairings) {
      const auto it = first_seen.find(p.id);
      if (it != first_seen.end() && it->second < j) {
        inference.statements.push_back({j, p.choice, it->second});
      }
    }
    for (const auto& p : receipts[j].body.pairings) first_seen.emplace(p.id, j);
  }
  return inference;
}

DetectionReport evaluate_detection(const SimulationTrace& trace) {
  DetectionReport report;
  report.behavior = std::string(behavior_name(trace.config.behavior));
  report.events = trace.events;
  report.clean = trace.events.empty();
  report.authority_privacy_risk = trace.config.election.full_bootstrap_mode;

  const auto& b = trace.config.behavior;
  if (std::holds_alternative<behavior::Honest>(b)) {
    report.detected = !trace.events.empty();
    if (report.detected) report.evidence = trace.events.front().kind;
  } else if (std::holds_alternative<behavior::SkewedBootstrap>(b)) {
    report.detected = trace.bootstrap_deltas.has_value();
    if (report.detected) report.evidence = "authority count check: " + describe(*trace.bootstrap_deltas);
  } else if (const auto* fraud = std::get_if<behavior::InjectFraud>(&b)) {
    report.detected =
        trace.audit && trace.audit->surplus == static_cast<std::int64_t>(fraud->count);
    if (trace.audit) report.evidence = "audit surplus " + std::to_string(trace.audit->surplus);
  } else if (std::holds_alternative<behavior::BetAttack>(b)) {
    // Only the first session is ever bet on.
    if (!trace.voters.empty()) {
      for (const auto& status : trace.voters.front().board_check) {
        if (status.state != PairingState::confirmed) {
          report.detected = true;
          report.evidence = "victim pairing " + status.pairing.choice + " " +
                            status.pairing.id.digits() + " " + std::string(to_string(status.state));
          break;
        }
      }
    }
  }
  return report;
}

DetectionRate detection_rate(ScenarioConfig base, std::uint64_t first_seed, std::uint64_t trials) {
  DetectionRate rate;
  for (std::uint64_t i = 0; i < trials; ++i) {
    base.seed = first_seed + i;
    ++rate.trials;
    if (evaluate_detection(run_scenario(base)).detected) ++rate.detected;
  }
  return rate;
}

}  // namespace evote
