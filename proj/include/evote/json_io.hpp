#pragma once

#include <nlohmann/json.hpp>

#include "evote/authority.hpp"
#include "evote/board.hpp"
#include "evote/machine.hpp"
#include "evote/model.hpp"
#include "evote/simulation.hpp"
#include "evote/verification.hpp"

// JSON forms of the domain types. Keys and signatures are lowercase hex.
// Published forms (Board, Receipt) never carry entry origins; only the
// simulator's trace and submission do.
namespace evote {

using nlohmann::json;

void to_json(json& j, const VoterId& id);
void from_json(const json& j, VoterId& id);
void to_json(json& j, const ElectionConfig& config);
void from_json(const json& j, ElectionConfig& config);
void to_json(json& j, const Pairing& pairing);
void from_json(const json& j, Pairing& pairing);
void to_json(json& j, const PublicKey& key);
void from_json(const json& j, PublicKey& key);
void to_json(json& j, const SecretKey& key);
void from_json(const json& j, SecretKey& key);
void to_json(json& j, const Ciphertext& ciphertext);
void from_json(const json& j, Ciphertext& ciphertext);
void to_json(json& j, const Receipt& receipt);
void from_json(const json& j, Receipt& receipt);
void to_json(json& j, const Results& results);
void to_json(json& j, const AuditReport& report);
void to_json(json& j, const CheckReport& report);
void to_json(json& j, const PairingStatus& status);
void to_json(json& j, const ComplaintOutcome& outcome);
void to_json(json& j, const CoercionInference& inference);
void to_json(json& j, const DetectionEvent& event);
void to_json(json& j, const DetectionReport& report);
void to_json(json& j, const MachineBehavior& behavior);
void to_json(json& j, const BoardSubmission& submission);  // origin-tagged
void to_json(json& j, const ScenarioConfig& config);
void from_json(const json& j, ScenarioConfig& config);
void to_json(json& j, const SimulationTrace& trace);

json to_json(const BootstrapRecord& record);

// Board has no default constructor, so it gets explicit helpers.
json board_to_json(const Board& board);
/// Throws ParseError or BoardError.
Board board_from_json(const json& j);

/// Behavior parsing needs the ballot to order skewed counts.
MachineBehavior behavior_from_json(const json& j, const ElectionConfig& config);

/// Wraps nlohmann parse/type errors into ParseError.
json parse_json_text(std::string_view text);

}  // namespace evote
