#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evote/crypto.hpp"
#include "evote/model.hpp"
#include "evote/random.hpp"
#include "evote/voter_id.hpp"

namespace evote {

namespace behavior {
struct Honest {
  friend bool operator==(const Honest&, const Honest&) = default;
};
// Bootstrap generated with these per-candidate counts instead of B each.
struct SkewedBootstrap {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  friend bool operator==(const SkewedBootstrap&, const SkewedBootstrap&) = default;
};
// `count` extra entries under `beneficiary`, with fresh ids, at close of day.
struct InjectFraud {
  std::uint64_t count = 0;
  std::string beneficiary;
  friend bool operator==(const InjectFraud&, const InjectFraud&) = default;
};
// The first session is shown an id already recorded under `target` instead of
// a fresh one. The voter's real vote is recorded under a hidden fresh id.
struct BetAttack {
  std::string target;
  friend bool operator==(const BetAttack&, const BetAttack&) = default;
};
}  // namespace behavior

using MachineBehavior = std::variant<behavior::Honest, behavior::SkewedBootstrap,
                                     behavior::InjectFraud, behavior::BetAttack>;

std::string_view behavior_name(const MachineBehavior& behavior);

struct BootstrapBatch {
  std::vector<Pairing> entries;  // generation order
  Signature machine_signature;
};

/// Plaintext handed to the authority's encryption key:
/// "<scheme>\n<signature hex>\n<canonical batch bytes>".
Bytes seal_batch_envelope(const BootstrapBatch& batch);
/// Inverse of seal_batch_envelope. Throws ParseError.
BootstrapBatch open_batch_envelope(ByteView plaintext);

struct Session {
  std::vector<VoterId> assigned_ids;          // shown at booth entry
  std::vector<std::string> selections;         // ballot order, empty until chosen
  std::optional<ReceiptBody> displayed_draft;  // set while the receipt is behind glass

  bool receipt_displayed() const noexcept { return displayed_draft.has_value(); }
};

/// One polling booth for one day. Sessions are strictly sequential.
class VotingMachine {
 public:
  struct Opening;

  /// Generates and records the bootstrap votes, signs the batch with the
  /// machine key and encrypts it to the authority. The returned ciphertext is
  /// the only external copy of the batch.
  static Opening start_of_day(ElectionConfig config, KeyPair keys, PublicKey authority_pub,
                              MachineBehavior behavior, RandomSource rng);

  /// Displays k fresh ids. Throws PhaseError if a session is active.
  const Session& begin_session();

  /// Builds the receipt draft: selected choices get the assigned ids, every
  /// other choice borrows a recorded id for that choice, picked uniformly.
  /// Throws BootstrapProblem when some choice has nothing to borrow.
  const ReceiptBody& make_choice(std::vector<std::string> selections);

  /// Destroys the displayed draft; the session keeps its ids.
  void cancel();

  /// Records the selections, counts the signing and hands out the signed receipt.
  Receipt validate();

  /// Voter walked out without validating; ids stay burnt.
  void abandon();

  /// Throws PhaseError while a session is active or after closing.
  BoardSubmission close_of_day();

  const ElectionConfig& config() const noexcept { return config_; }
  const PublicKey& public_key() const noexcept { return keys_.public_key; }
  const std::vector<BoardEntry>& recorded() const noexcept { return recorded_; }
  const IdSet& issued_ids() const noexcept { return issued_; }
  std::uint64_t signings() const noexcept { return signings_; }
  const std::optional<Session>& session() const noexcept { return session_; }
  const MachineBehavior& behavior() const noexcept { return behavior_; }

 private:
  VotingMachine(ElectionConfig config, KeyPair keys, PublicKey authority_pub,
                MachineBehavior behavior, RandomSource rng);

  VoterId fresh_id();
  void record(std::string choice, VoterId id, Origin origin);
  std::size_t choice_index(std::string_view choice) const;

  ElectionConfig config_;
  KeyPair keys_;
  PublicKey authority_pub_;
  MachineBehavior behavior_;
  RandomSource rng_;

  IdSet issued_;
  std::vector<BoardEntry> recorded_;
  std::vector<std::vector<std::size_t>> by_choice_;    // indices into recorded_
  std::vector<std::vector<std::size_t>> unborrowed_;  // full-bootstrap pool
  std::uint64_t signings_ = 0;
  std::uint64_t sessions_started_ = 0;
  bool closed_ = false;

  std::optional<Session> session_;
  std::vector<std::pair<std::size_t, std::size_t>> draft_borrows_;  // (choice, pool slot)
  std::optional<VoterId> hidden_id_;
};

struct VotingMachine::Opening {
  VotingMachine machine;
  Ciphertext bootstrap_ciphertext;
};

}  // namespace evote
