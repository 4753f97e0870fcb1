#include "evote/machine.hpp"

#include <algorithm>
#include <unordered_set>

#include "evote/encoding.hpp"
#include "evote/error.hpp"

namespace evote {

std::string_view behavior_name(const MachineBehavior& behavior) {
  struct Namer {
    std::string_view operator()(const behavior::Honest&) const { return "honest"; }
    std::string_view operator()(const behavior::SkewedBootstrap&) const {
      return "skewed_bootstrap";
    }
    std::string_view operator()(const behavior::InjectFraud&) const { return "inject_fraud"; }
    std::string_view operator()(const behavior::BetAttack&) const { return "bet_attack"; }
  };
  return std::visit(Namer{}, behavior);
}

Bytes seal_batch_envelope(const BootstrapBatch& batch) {
  Bytes out;
  const std::string head =
      batch.machine_signature.scheme + '\n' + to_hex(batch.machine_signature.bytes) + '\n';
  out.insert(out.end(), head.begin(), head.end());
  const Bytes body = canonical_batch_bytes(batch.entries);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

BootstrapBatch open_batch_envelope(ByteView plaintext) {
  const std::string_view text(reinterpret_cast<const char*>(plaintext.data()), plaintext.size());
  const std::size_t first = text.find('\n');
  const std::size_t second = first == std::string_view::npos ? first : text.find('\n', first + 1);
  if (second == std::string_view::npos) throw ParseError("bootstrap envelope is truncated");
  BootstrapBatch batch;
  batch.machine_signature.scheme = std::string(text.substr(0, first));
  batch.machine_signature.bytes = from_hex(text.substr(first + 1, second - first - 1));
  batch.entries = parse_batch_bytes(plaintext.subspan(second + 1));
  return batch;
}

namespace {

void check_behavior(const MachineBehavior& behavior, const ElectionConfig& config) {
  auto require_candidate = [&](const std::string& label, const char* what) {
    if (!config.position(label)) {
      throw ConfigError(std::string(what) + " names unknown candidate '" + label + "'");
    }
  };
  if (const auto* skew = std::get_if<behavior::SkewedBootstrap>(&behavior)) {
    for (const auto& [label, count] : skew->counts) require_candidate(label, "skewed_bootstrap");
  } else if (const auto* fraud = std::get_if<behavior::InjectFraud>(&behavior)) {
    require_candidate(fraud->beneficiary, "inject_fraud");
  } else if (const auto* bet = std::get_if<behavior::BetAttack>(&behavior)) {
    require_candidate(bet->target, "bet_attack");
  }
}

}  // namespace

VotingMachine::VotingMachine(ElectionConfig config, KeyPair keys, PublicKey authority_pub,
                             MachineBehavior behavior, RandomSource rng)
    : config_(std::move(config)),
      keys_(std::move(keys)),
      authority_pub_(std::move(authority_pub)),
      behavior_(std::move(behavior)),
      rng_(std::move(rng)),
      by_choice_(config_.candidates.size()),
      unborrowed_(config_.candidates.size()) {}

VotingMachine::Opening VotingMachine::start_of_day(ElectionConfig config, KeyPair keys,
                                                   PublicKey authority_pub,
                                                   MachineBehavior behavior, RandomSource rng) {
  config.validate();
  check_behavior(behavior, config);
  VotingMachine machine(std::move(config), std::move(keys), std::move(authority_pub),
                        std::move(behavior), std::move(rng));
  const ElectionConfig& cfg = machine.config_;

  std::vector<std::uint64_t> per_candidate(cfg.candidates.size(), cfg.bootstrap_per_candidate);
  if (const auto* skew = std::get_if<behavior::SkewedBootstrap>(&machine.behavior_)) {
    for (const auto& [label, count] : skew->counts) per_candidate[*cfg.position(label)] = count;
  }

  BootstrapBatch batch;
  for (std::size_t c = 0; c < cfg.candidates.size(); ++c) {
    for (std::uint64_t i = 0; i < per_candidate[c]; ++i) {
      VoterId id = machine.fresh_id();
      batch.entries.push_back({cfg.candidates[c], id});
      machine.unborrowed_[c].push_back(machine.recorded_.size());
      machine.record(cfg.candidates[c], std::move(id), Origin::bootstrap);
    }
  }
  batch.machine_signature = sign(machine.keys_.secret_key, canonical_batch_bytes(batch.entries));
  Ciphertext ciphertext =
      encrypt_to(machine.authority_pub_, seal_batch_envelope(batch), machine.rng_);
  return Opening{std::move(machine), std::move(ciphertext)};
}

VoterId VotingMachine::fresh_id() {
  VoterId id = generate_id(rng_, issued_);
  issued_.insert(id);
  return id;
}

void VotingMachine::record(std::string choice, VoterId id, Origin origin) {
  by_choice_[choice_index(choice)].push_back(recorded_.size());
  recorded_.push_back({std::move(choice), std::move(id), origin});
}

std::size_t VotingMachine::choice_index(std::string_view choice) const {
  const auto pos = config_.position(choice);
  if (!pos) throw InvalidSelection("'" + std::string(choice) + "' is not on the ballot");
  return *pos;
}

const Session& VotingMachine::begin_session() {
  if (closed_) throw PhaseError("machine is closed for the day");
  if (session_) throw PhaseError("a session is already in progress");

  Session session;
  const auto* bet = std::get_if<behavior::BetAttack>(&behavior_);
  for (std::uint64_t i = 0; i < config_.selections_per_voter; ++i) {
    if (bet && sessions_started_ == 0 && i == 0) {
      const auto& pool = by_choice_[choice_index(bet->target)];
      if (!pool.empty()) {
        session.assigned_ids.push_back(recorded_[pool[rng_.uniform_below(pool.size())]].id);
        hidden_id_ = fresh_id();
        continue;
      }
    }
    session.assigned_ids.push_back(fresh_id());
  }
  ++sessions_started_;
  session_ = std::move(session);
  return *session_;
}

const ReceiptBody& VotingMachine::make_choice(std::vector<std::string> selections) {
  if (!session_) throw PhaseError("no session in progress");
  if (session_->receipt_displayed()) throw PhaseError("a receipt is already displayed");
  if (selections.size() != config_.selections_per_voter) {
    throw InvalidSelection("expected " + std::to_string(config_.selections_per_voter) +
                           " selections, got " + std::to_string(selections.size()));
  }
  std::vector<bool> selected(config_.candidates.size(), false);
  for (const auto& s : selections) {
    const std::size_t c = choice_index(s);
    if (selected[c]) throw InvalidSelection("'" + s + "' selected twice");
    selected[c] = true;
  }

  ReceiptBody body{config_.header, {}};
  std::vector<std::string> ordered;
  std::vector<std::pair<std::size_t, std::size_t>> borrows;
  std::vector<std::string> unborrowable;
  for (std::size_t c = 0; c < config_.candidates.size(); ++c) {
    const std::string& label = config_.candidates[c];
    if (selected[c]) {
      body.pairings.push_back({label, session_->assigned_ids[ordered.size()]});
      ordered.push_back(label);
      continue;
    }
    const auto& pool = config_.full_bootstrap_mode ? unborrowed_[c] : by_choice_[c];
    if (pool.empty()) {
      unborrowable.push_back(label);
      continue;
    }
    const std::size_t slot = rng_.uniform_below(pool.size());
    borrows.emplace_back(c, slot);
    body.pairings.push_back({label, recorded_[pool[slot]].id});
  }
  if (!unborrowable.empty()) throw BootstrapProblem(std::move(unborrowable));

  session_->selections = std::move(ordered);
  session_->displayed_draft = std::move(body);
  draft_borrows_ = std::move(borrows);
  return *session_->displayed_draft;
}

void VotingMachine::cancel() {
  if (!session_ || !session_->receipt_displayed()) throw PhaseError("no receipt to cancel");
  session_->displayed_draft.reset();
  session_->selections.clear();
  draft_borrows_.clear();
}

Receipt VotingMachine::validate() {
  if (!session_ || !session_->receipt_displayed()) throw PhaseError("no receipt to validate");
  Session& s = *session_;

  for (std::size_t i = 0; i < s.selections.size(); ++i) {
    VoterId id = (i == 0 && hidden_id_) ? *hidden_id_ : s.assigned_ids[i];
    record(s.selections[i], std::move(id), Origin::real);
  }
  if (config_.full_bootstrap_mode) {
    for (const auto& [c, slot] : draft_borrows_) {
      auto& pool = unborrowed_[c];
      pool[slot] = pool.back();
      pool.pop_back();
    }
  }
  ++signings_;

  Receipt receipt{std::move(*s.displayed_draft), {}};
  receipt.signature = sign(keys_.secret_key, canonical_receipt_bytes(receipt.body));
  session_.reset();
  hidden_id_.reset();
  draft_borrows_.clear();
  return receipt;
}

void VotingMachine::abandon() {
  if (!session_) throw PhaseError("no session to abandon");
  session_.reset();
  hidden_id_.reset();
  draft_borrows_.clear();
}

BoardSubmission VotingMachine::close_of_day() {
  if (closed_) throw PhaseError("machine already closed");
  if (session_) throw PhaseError("cannot close while a session is in progress");
  if (const auto* fraud = std::get_if<behavior::InjectFraud>(&behavior_)) {
    for (std::uint64_t i = 0; i < fraud->count; ++i) {
      record(fraud->beneficiary, fresh_id(), Origin::fraudulent);
    }
  }
  closed_ = true;
  return BoardSubmission{config_.header, config_.candidates, recorded_, signings_, std::nullopt};
}

}  // namespace evote
