#include "evote/json_io.hpp"

#include "evote/error.hpp"

namespace evote {

void to_json(json& j, const VoterId& id) { j = id.digits(); }
void from_json(const json& j, VoterId& id) { id = VoterId::parse(j.get<std::string>()); }

void to_json(json& j, const ElectionConfig& c) {
  j = json{{"title", c.header.title},
           {"date", c.header.date},
           {"precinct", c.header.precinct},
           {"candidates", c.candidates},
           {"selections_per_voter", c.selections_per_voter},
           {"bootstrap_per_candidate", c.bootstrap_per_candidate},
           {"registered_voters", c.registered_voters},
           {"full_bootstrap_mode", c.full_bootstrap_mode}};
}

void from_json(const json& j, ElectionConfig& c) {
  c.header.title = j.at("title").get<std::string>();
  c.header.date = j.at("date").get<std::string>();
  c.header.precinct = j.at("precinct").get<std::string>();
  c.candidates = j.at("candidates").get<std::vector<std::string>>();
  c.selections_per_voter = j.value("selections_per_voter", std::uint64_t{1});
  c.bootstrap_per_candidate = j.value("bootstrap_per_candidate", std::uint64_t{0});
  c.registered_voters = j.at("registered_voters").get<std::uint64_t>();
  c.full_bootstrap_mode = j.value("full_bootstrap_mode", false);
}

void to_json(json& j, const Pairing& p) { j = json{{"choice", p.choice}, {"id", p.id}}; }
void from_json(const json& j, Pairing& p) {
  p.choice = j.at("choice").get<std::string>();
  p.id = j.at("id").get<VoterId>();
}

void to_json(json& j, const PublicKey& k) {
  j = json{{"scheme", k.scheme}, {"public_key", to_hex(k.bytes)}};
}
void from_json(const json& j, PublicKey& k) {
  k.scheme = j.at("scheme").get<std::string>();
  k.bytes = from_hex(j.at("public_key").get<std::string>());
}

void to_json(json& j, const SecretKey& k) {
  j = json{{"scheme", k.scheme}, {"secret_key", to_hex(k.bytes)}};
}
void from_json(const json& j, SecretKey& k) {
  k.scheme = j.at("scheme").get<std::string>();
  k.bytes = from_hex(j.at("secret_key").get<std::string>());
}

void to_json(json& j, const Ciphertext& c) {
  j = json{{"scheme", c.scheme}, {"ciphertext", to_hex(c.bytes)}};
}
void from_json(const json& j, Ciphertext& c) {
  c.scheme = j.at("scheme").get<std::string>();
  c.bytes = from_hex(j.at("ciphertext").get<std::string>());
}

void to_json(json& j, const Receipt& r) {
  j = json{{"title", r.body.header.title},
           {"date", r.body.header.date},
           {"precinct", r.body.header.precinct},
           {"pairings", r.body.pairings},
           {"signature", to_hex(r.signature.bytes)},
           {"signature_scheme", r.signature.scheme}};
}

void from_json(const json& j, Receipt& r) {
  r.body.header = {j.at("title").get<std::string>(), j.at("date").get<std::string>(),
                   j.at("precinct").get<std::string>()};
  r.body.pairings = j.at("pairings").get<std::vector<Pairing>>();
  r.signature.bytes = from_hex(j.at("signature").get<std::string>());
  r.signature.scheme = j.value("signature_scheme", std::string(schemes::kEd25519));
}

namespace {
json adjustment_json(const std::optional<Adjustment>& a) {
  if (!a) return nullptr;
  return json{{"choice", a->choice}, {"amount", a->amount}};
}
}  // namespace

void to_json(json& j, const Results& r) {
  json rows = json::array();
  for (const auto& c : r.candidates) {
    rows.push_back({{"choice", c.choice},
                    {"published_count", c.published_count},
                    {"final_count", c.final_count}});
  }
  j = json{{"results", rows}, {"surplus", r.surplus}, {"adjusted", adjustment_json(r.adjusted)}};
}

void to_json(json& j, const AuditReport& r) {
  j = json{{"expected_entries", r.expected_entries},
           {"actual_entries", r.actual_entries},
           {"surplus", r.surplus},
           {"winner_before", r.winner_before},
           {"winner_after", r.winner_after},
           {"adjustment", adjustment_json(r.adjustment)},
           {"tie_flag", r.tie_flag},
           {"verdict", to_string(r.verdict)}};
}

void to_json(json& j, const CheckReport& r) {
  json moved = json::array();
  for (const auto& m : r.moved) {
    moved.push_back(
        {{"id", m.id}, {"expected_choice", m.expected_choice}, {"found_choice", m.found_choice}});
  }
  j = json{{"missing", r.missing}, {"moved", moved}, {"verdict", r.clean() ? "clean" : "mismatch"}};
}

void to_json(json& j, const PairingStatus& s) {
  j = json{{"choice", s.pairing.choice}, {"id", s.pairing.id}, {"status", to_string(s.state)}};
  if (s.found_choice) j["found_choice"] = *s.found_choice;
}

void to_json(json& j, const ComplaintOutcome& o) {
  json correction = nullptr;
  if (o.correction) {
    correction = {{"choice", o.correction->pairing.choice}, {"id", o.correction->pairing.id}};
    correction["from_choice"] =
        o.correction->from_choice ? json(*o.correction->from_choice) : json(nullptr);
  }
  j = json{{"receipt_authentic", o.receipt_authentic},
           {"disputed", o.disputed},
           {"board_state", o.board_state},
           {"ruling", to_string(o.ruling)},
           {"correction", correction}};
}

void to_json(json& j, const CoercionInference& inference) {
  json statements = json::array();
  for (const auto& s : inference.statements) {
    statements.push_back({{"voter_index", s.voter_index},
                          {"choice", s.choice},
                          {"polarity", CoercionStatement::polarity},
                          {"evidence_index", s.evidence_index}});
  }
  j = json{{"statements", statements}};
}

void to_json(json& j, const DetectionEvent& e) { j = json{{"kind", e.kind}, {"detail", e.detail}}; }

void to_json(json& j, const DetectionReport& r) {
  j = json{{"behavior", r.behavior},
           {"detected", r.detected},
           {"evidence", r.evidence},
           {"events", r.events},
           {"verdict", r.clean ? "clean" : "detected"},
           {"authority_privacy_risk", r.authority_privacy_risk}};
}

void to_json(json& j, const MachineBehavior& behavior) {
  j = json{{"kind", behavior_name(behavior)}};
  if (const auto* skew = std::get_if<behavior::SkewedBootstrap>(&behavior)) {
    json counts = json::object();
    for (const auto& [label, count] : skew->counts) counts[label] = count;
    j["counts"] = counts;
  } else if (const auto* fraud = std::get_if<behavior::InjectFraud>(&behavior)) {
    j["count"] = fraud->count;
    j["beneficiary"] = fraud->beneficiary;
  } else if (const auto* bet = std::get_if<behavior::BetAttack>(&behavior)) {
    j["target"] = bet->target;
  }
}

MachineBehavior behavior_from_json(const json& j, const ElectionConfig& config) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "honest") return behavior::Honest{};
  if (kind == "skewed_bootstrap") {
    behavior::SkewedBootstrap skew;
    const json& counts = j.at("counts");
    for (const auto& label : config.candidates) {
      skew.counts.emplace_back(label, counts.contains(label)
                                          ? counts.at(label).get<std::uint64_t>()
                                          : config.bootstrap_per_candidate);
    }
    for (const auto& [label, _] : counts.items()) {
      if (!config.position(label)) throw ConfigError("skewed count for unknown candidate '" + label + "'");
    }
    return skew;
  }
  if (kind == "inject_fraud") {
    return behavior::InjectFraud{j.at("count").get<std::uint64_t>(),
                                 j.value("beneficiary", config.candidates.at(0))};
  }
  if (kind == "bet_attack") return behavior::BetAttack{j.at("target").get<std::string>()};
  throw ConfigError("unknown machine behavior '" + kind + "'");
}

void to_json(json& j, const BoardSubmission& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"choice", e.choice}, {"id", e.id}, {"origin", to_string(e.origin)}});
  }
  j = json{{"title", s.header.title},
           {"date", s.header.date},
           {"precinct", s.header.precinct},
           {"candidates", s.candidates},
           {"entries", entries},
           {"signings_count", s.signings_count},
           {"voter_names", s.voter_names ? json(*s.voter_names) : json(nullptr)}};
}

void to_json(json& j, const ScenarioConfig& c) {
  json behavior_json;
  to_json(behavior_json, c.behavior);
  j = json{{"election", c.election},
           {"num_voters", c.num_voters},
           {"voter_choice_distribution", c.voter_choice_distribution},
           {"behavior", behavior_json},
           {"collect_receipts", c.collect_receipts},
           {"coercer_knows_order", c.coercer_knows_order},
           {"seed", c.seed},
           {"authority_destroys_record", c.authority_destroys_record},
           {"publish_voter_names", c.publish_voter_names},
           {"signature_scheme", c.signature_scheme},
           {"encryption_scheme", c.encryption_scheme}};
  if (c.scripted_choices) j["scripted_choices"] = *c.scripted_choices;
}

void from_json(const json& j, ScenarioConfig& c) {
  c.election = j.at("election").get<ElectionConfig>();
  c.num_voters = j.at("num_voters").get<std::uint64_t>();
  const std::size_t m = c.election.candidates.size();
  if (!j.contains("voter_choice_distribution")) {
    c.voter_choice_distribution.assign(m, 1.0);
  } else if (const json& d = j.at("voter_choice_distribution"); d.is_object()) {
    c.voter_choice_distribution.assign(m, 0.0);
    for (const auto& [label, weight] : d.items()) {
      const auto pos = c.election.position(label);
      if (!pos) throw ConfigError("weight for unknown candidate '" + label + "'");
      c.voter_choice_distribution[*pos] = weight.get<double>();
    }
  } else {
    c.voter_choice_distribution = d.get<std::vector<double>>();
  }
  c.behavior = j.contains("behavior") ? behavior_from_json(j.at("behavior"), c.election)
                                      : MachineBehavior{behavior::Honest{}};
  c.collect_receipts = j.value("collect_receipts", true);
  c.coercer_knows_order = j.value("coercer_knows_order", true);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("scripted_choices")) {
    c.scripted_choices = j.at("scripted_choices").get<std::vector<std::vector<std::string>>>();
  } else {
    c.scripted_choices.reset();
  }
  c.authority_destroys_record = j.value("authority_destroys_record", true);
  c.publish_voter_names = j.value("publish_voter_names", false);
  c.signature_scheme = j.value("signature_scheme", std::string(schemes::kEd25519));
  c.encryption_scheme = j.value("encryption_scheme", std::string(schemes::kSealedBox));
}

void to_json(json& j, const SimulationTrace& t) {
  json voters = json::array();
  for (const auto& v : t.voters) {
    voters.push_back({{"index", v.index},
                      {"selections", v.selections},
                      {"assigned_ids", v.assigned_ids},
                      {"receipt", v.receipt},
                      {"board_check", v.board_check}});
  }
  json deltas = nullptr;
  if (t.bootstrap_deltas) {
    deltas = json::array();
    for (const auto& d : *t.bootstrap_deltas) deltas.push_back({{"choice", d.choice}, {"delta", d.delta}});
  }
  j = json{{"config", t.config},
           {"machine_public_key", t.machine_keys.public_key},
           {"authority_public_key", t.authority_keys.public_key},
           {"bootstrap_ciphertext", t.bootstrap_ciphertext},
           {"voters", voters},
           {"submission", t.submission},
           {"board", t.board ? board_to_json(*t.board) : json(nullptr)},
           {"results", t.results ? json(*t.results) : json(nullptr)},
           {"bootstrap_deltas", deltas},
           {"authority_check", t.authority_check ? json(*t.authority_check) : json(nullptr)},
           {"authority_record_destroyed", t.authority_record_destroyed},
           {"audit", t.audit ? json(*t.audit) : json(nullptr)},
           {"coercion", t.coercion ? json(*t.coercion) : json(nullptr)},
           {"events", t.events}};
}

json to_json(const BootstrapRecord& record) {
  return json{{"entries", record.destroyed() ? std::vector<Pairing>{} : record.entries()},
              {"verified_at", record.verified_at()},
              {"destroyed", record.destroyed()}};
}

json board_to_json(const Board& board) {
  return json{{"title", board.header().title},
              {"date", board.header().date},
              {"precinct", board.header().precinct},
              {"candidates", board.candidates()},
              {"entries", board.entries()},
              {"signings_count", board.signings_count()},
              {"voter_names", board.voter_names() ? json(*board.voter_names()) : json(nullptr)}};
}

Board board_from_json(const json& j) {
  try {
    std::optional<std::vector<std::string>> names;
    if (j.contains("voter_names") && !j.at("voter_names").is_null()) {
      names = j.at("voter_names").get<std::vector<std::string>>();
    }
    return Board::assemble({j.at("title").get<std::string>(), j.at("date").get<std::string>(),
                            j.at("precinct").get<std::string>()},
                           j.at("candidates").get<std::vector<std::string>>(),
                           j.at("entries").get<std::vector<Pairing>>(),
                           j.at("signings_count").get<std::uint64_t>(), std::move(names));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed board: ") + e.what());
  }
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace evote
