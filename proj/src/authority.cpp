#include "evote/authority.hpp"

#include <unordered_set>

#include "evote/encoding.hpp"
#include "evote/error.hpp"
#include "evote/machine.hpp"

namespace evote {

const std::vector<Pairing>& BootstrapRecord::entries() const {
  if (destroyed_) throw RecordDestroyed("bootstrap record has been destroyed");
  return entries_;
}

BootstrapRecord receive_batch(const Ciphertext& ciphertext, const PublicKey& machine_pub,
                              const SecretKey& authority_secret, const ElectionConfig& config,
                              std::string verified_at) {
  const Bytes plaintext = decrypt(authority_secret, ciphertext);
  BootstrapBatch batch;
  try {
    batch = open_batch_envelope(plaintext);
  } catch (const ParseError& e) {
    throw MalformedBatch(std::string("bootstrap batch does not parse: ") + e.what());
  }
  if (!verify(machine_pub, canonical_batch_bytes(batch.entries), batch.machine_signature)) {
    throw BadSignature("bootstrap batch signature does not verify under the machine key");
  }

  std::vector<std::int64_t> counts(config.candidates.size(), 0);
  std::unordered_set<VoterId, VoterIdHash> ids;
  for (const auto& e : batch.entries) {
    const auto pos = config.position(e.choice);
    if (!pos) throw MalformedBatch("bootstrap entry for unknown choice '" + e.choice + "'");
    if (!ids.insert(e.id).second) {
      throw MalformedBatch("bootstrap id " + e.id.digits() + " appears twice");
    }
    ++counts[*pos];
  }
  std::vector<CountDelta> deltas;
  const auto expected = static_cast<std::int64_t>(config.bootstrap_per_candidate);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != expected) deltas.push_back({config.candidates[i], counts[i] - expected});
  }
  if (!deltas.empty()) throw BootstrapCountMismatch(std::move(deltas));

  return BootstrapRecord(std::move(batch.entries), std::move(verified_at));
}

CheckReport end_of_day_check(BootstrapRecord& record, const Board& board) {
  CheckReport report;
  for (const auto& e : record.entries()) {
    const auto found = board.find(e.id);
    if (!found) {
      report.missing.push_back(e);
    } else if (*found != e.choice) {
      report.moved.push_back({e.id, e.choice, *found});
    }
  }
  record.checked_ = true;
  return report;
}

void destroy(BootstrapRecord& record) {
  if (record.destroyed_) throw RecordDestroyed("bootstrap record already destroyed");
  if (!record.checked_) throw PhaseError("destroy requested before the end-of-day check");
  record.entries_.clear();
  record.entries_.shrink_to_fit();
  record.destroyed_ = true;
}

}  // namespace evote
