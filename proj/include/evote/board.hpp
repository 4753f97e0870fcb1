#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evote/model.hpp"

namespace evote {

/// Published bulletin board. Immutable once built; entries are sorted by
/// ballot order, then ascending id, and carry no origin information.
class Board {
 public:
  /// Validates and sorts. Throws BoardError on a duplicate (choice, id), an id
  /// under two choices, or a choice that is not a candidate.
  static Board assemble(ElectionHeader header, std::vector<std::string> candidates,
                        std::vector<Pairing> entries, std::uint64_t signings_count,
                        std::optional<std::vector<std::string>> voter_names = std::nullopt);

  const ElectionHeader& header() const noexcept { return header_; }
  const std::vector<std::string>& candidates() const noexcept { return candidates_; }
  const std::vector<Pairing>& entries() const noexcept { return entries_; }
  std::uint64_t signings_count() const noexcept { return signings_count_; }
  const std::optional<std::vector<std::string>>& voter_names() const noexcept {
    return voter_names_;
  }

  std::optional<std::string> find(const VoterId& id) const;

  friend bool operator==(const Board& a, const Board& b) {
    return a.header_ == b.header_ && a.candidates_ == b.candidates_ &&
           a.entries_ == b.entries_ && a.signings_count_ == b.signings_count_ &&
           a.voter_names_ == b.voter_names_;
  }

 private:
  Board() = default;

  ElectionHeader header_;
  std::vector<std::string> candidates_;
  std::vector<Pairing> entries_;
  std::uint64_t signings_count_ = 0;
  std::optional<std::vector<std::string>> voter_names_;
  std::unordered_map<VoterId, std::size_t, VoterIdHash> by_id_;
};

enum class AuditVerdict { clean, surplus_detected };

std::string_view to_string(AuditVerdict verdict);

struct AuditReport {
  std::int64_t expected_entries = 0;
  std::int64_t actual_entries = 0;
  std::int64_t surplus = 0;
  std::string winner_before;
  std::string winner_after;
  std::optional<Adjustment> adjustment;
  // Several candidates shared the top count; the first in ballot order was used.
  bool tie_flag = false;
  AuditVerdict verdict = AuditVerdict::clean;
  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Strips origins and publishes.
Board publish(const BoardSubmission& submission);

/// Per-candidate published count and published minus B. Throws
/// TallyInconsistency if any final count would be negative.
Results tally(const Board& board, const ElectionConfig& config);

std::optional<std::string> lookup(const Board& board, const VoterId& id);

/// Compares the entry count against signings * k + m * B. A surplus is
/// subtracted from the final-count winner (lowest ballot position on ties).
/// Throws MissingVotes on a shortfall and VoterRollMismatch when published
/// voter names disagree with the signings count.
AuditReport audit_counts(const Board& board, const ElectionConfig& config);

/// Applies the audit's surplus adjustment on top of `results`.
Results apply_adjustment(Results results, const AuditReport& report);

}  // namespace evote
