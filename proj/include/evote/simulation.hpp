#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evote/authority.hpp"
#include "evote/board.hpp"
#include "evote/crypto.hpp"
#include "evote/error.hpp"
#include "evote/machine.hpp"
#include "evote/model.hpp"
#include "evote/verification.hpp"

namespace evote {

struct ScenarioConfig {
  ElectionConfig election;
  std::uint64_t num_voters = 0;
  std::vector<double> voter_choice_distribution;  // per candidate, ballot order
  MachineBehavior behavior = behavior::Honest{};
  bool collect_receipts = true;
  bool coercer_knows_order = true;
  std::uint64_t seed = 0;

  // Fixture support: explicit selections per voter override the distribution.
  std::optional<std::vector<std::vector<std::string>>> scripted_choices;
  bool authority_destroys_record = true;
  bool publish_voter_names = false;
  std::string signature_scheme{schemes::kEd25519};
  std::string encryption_scheme{schemes::kSealedBox};

  /// Throws ConfigError.
  void validate() const;
};

// Stream labels used to split the scenario seed.
namespace streams {
inline constexpr std::string_view kMachineKeys = "machine-keys";
inline constexpr std::string_view kAuthorityKeys = "authority-keys";
inline constexpr std::string_view kMachine = "machine";
inline constexpr std::string_view kVoters = "voters";
}  // namespace streams

struct VoterRecord {
  std::size_t index = 0;               // casting order, from 0
  std::vector<std::string> selections; // ground truth, ballot order
  std::vector<VoterId> assigned_ids;   // as displayed at booth entry
  Receipt receipt;
  std::vector<PairingStatus> board_check;
};

struct DetectionEvent {
  std::string kind;
  std::string detail;
  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

// "Voter `voter_index` did not vote for `choice`": the id on that pairing was
// already printed on receipt `evidence_index`.
struct CoercionStatement {
  std::size_t voter_index = 0;
  std::string choice;
  std::size_t evidence_index = 0;
  static constexpr std::string_view polarity = "did_not_vote_for";
  friend bool operator==(const CoercionStatement&, const CoercionStatement&) = default;
};

struct CoercionInference {
  std::vector<CoercionStatement> statements;
};

struct SimulationTrace {
  ScenarioConfig config;
  KeyPair machine_keys;
  KeyPair authority_keys;
  Ciphertext bootstrap_ciphertext;
  std::vector<VoterRecord> voters;
  BoardSubmission submission;
  std::optional<Board> board;
  std::optional<Results> results;
  std::optional<std::vector<CountDelta>> bootstrap_deltas;
  std::optional<CheckReport> authority_check;
  bool authority_record_destroyed = false;
  std::optional<AuditReport> audit;
  std::optional<CoercionInference> coercion;
  std::vector<DetectionEvent> events;

  std::vector<std::int64_t> ground_truth_histogram() const;  // ballot order
};

/// Whole election day, deterministic in the config (including its seed).
/// Module errors become detection events.
SimulationTrace run_scenario(const ScenarioConfig& config);

/// Receipts in casting order. Only negative statements are ever produced.
CoercionInference coercion_infer(std::span<const Receipt> receipts);

struct DetectionReport {
  std::string behavior;
  bool detected = false;
  std::string evidence;
  std::vector<DetectionEvent> events;
  bool clean = true;
  // Full-bootstrap mode lets the authority tell real votes from seed votes.
  bool authority_privacy_risk = false;
};

DetectionReport evaluate_detection(const SimulationTrace& trace);

struct DetectionRate {
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(detected) / trials; }
};

/// Runs `trials` scenarios with seeds first_seed, first_seed + 1, ...
DetectionRate detection_rate(ScenarioConfig base, std::uint64_t first_seed,
                             std::uint64_t trials);

}  // namespace evote
