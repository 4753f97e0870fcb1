#pragma once

#include <string>
#include <vector>

#include "evote/board.hpp"
#include "evote/crypto.hpp"
#include "evote/model.hpp"

namespace evote {

struct MovedEntry {
  VoterId id;
  std::string expected_choice;
  std::string found_choice;
  friend bool operator==(const MovedEntry&, const MovedEntry&) = default;
};

struct CheckReport {
  std::vector<Pairing> missing;
  std::vector<MovedEntry> moved;
  bool clean() const noexcept { return missing.empty() && moved.empty(); }
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

class BootstrapRecord;

/// Lists batch entries missing from the board or published under another choice.
/// Throws RecordDestroyed on a destroyed record.
CheckReport end_of_day_check(BootstrapRecord& record, const Board& board);

/// Clears the entries for good. Throws RecordDestroyed on a second call and
/// PhaseError if the end-of-day check has not run.
void destroy(BootstrapRecord& record);

/// The authority's copy of one machine's bootstrap batch.
class BootstrapRecord {
 public:
  BootstrapRecord(std::vector<Pairing> entries, std::string verified_at)
      : entries_(std::move(entries)), verified_at_(std::move(verified_at)) {}

  /// Throws RecordDestroyed after destroy().
  const std::vector<Pairing>& entries() const;
  const std::string& verified_at() const noexcept { return verified_at_; }
  bool destroyed() const noexcept { return destroyed_; }
  bool checked() const noexcept { return checked_; }

 private:
  friend CheckReport end_of_day_check(BootstrapRecord&, const Board&);
  friend void destroy(BootstrapRecord&);

  std::vector<Pairing> entries_;
  std::string verified_at_;
  bool checked_ = false;
  bool destroyed_ = false;
};

/// Decrypts, verifies the machine signature and checks exactly B entries per
/// candidate. Throws CryptoError, BadSignature, MalformedBatch or
/// BootstrapCountMismatch (with per-candidate deltas, ballot order).
BootstrapRecord receive_batch(const Ciphertext& ciphertext, const PublicKey& machine_pub,
                              const SecretKey& authority_secret, const ElectionConfig& config,
                              std::string verified_at);

}  // namespace evote
