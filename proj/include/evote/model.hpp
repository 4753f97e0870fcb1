#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evote/crypto.hpp"
#include "evote/voter_id.hpp"

namespace evote {

struct ElectionHeader {
  std::string title;
  std::string date;
  std::string precinct;
  friend bool operator==(const ElectionHeader&, const ElectionHeader&) = default;
};

struct ElectionConfig {
  ElectionHeader header;
  std::vector<std::string> candidates;  // ballot order
  std::uint64_t selections_per_voter = 1;
  std::uint64_t bootstrap_per_candidate = 0;
  std::uint64_t registered_voters = 1;
  bool full_bootstrap_mode = false;

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;

  /// Ballot position of `choice`, or nullopt if it is not a candidate.
  std::optional<std::size_t> position(std::string_view choice) const;

  friend bool operator==(const ElectionConfig&, const ElectionConfig&) = default;
};

struct Pairing {
  std::string choice;
  VoterId id;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

// One pairing per candidate, in ballot order.
struct ReceiptBody {
  ElectionHeader header;
  std::vector<Pairing> pairings;
  friend bool operator==(const ReceiptBody&, const ReceiptBody&) = default;
};

struct Receipt {
  ReceiptBody body;
  Signature signature;
  friend bool operator==(const Receipt&, const Receipt&) = default;
};

enum class Origin { real, bootstrap, fraudulent };

std::string_view to_string(Origin origin);
Origin origin_from_string(std::string_view text);

// Ground-truth tagged entry. The origin never leaves the simulator.
struct BoardEntry {
  std::string choice;
  VoterId id;
  Origin origin = Origin::real;
  friend bool operator==(const BoardEntry&, const BoardEntry&) = default;
};

// What a machine hands over at close of day.
struct BoardSubmission {
  ElectionHeader header;
  std::vector<std::string> candidates;
  std::vector<BoardEntry> entries;
  std::uint64_t signings_count = 0;
  std::optional<std::vector<std::string>> voter_names;
  friend bool operator==(const BoardSubmission&, const BoardSubmission&) = default;
};

struct CandidateResult {
  std::string choice;
  std::int64_t published_count = 0;
  std::int64_t final_count = 0;
  friend bool operator==(const CandidateResult&, const CandidateResult&) = default;
};

struct Adjustment {
  std::string choice;
  std::int64_t amount = 0;
  friend bool operator==(const Adjustment&, const Adjustment&) = default;
};

struct Results {
  std::vector<CandidateResult> candidates;  // ballot order
  std::int64_t surplus = 0;
  std::optional<Adjustment> adjusted;

  const CandidateResult& at(std::string_view choice) const;
  friend bool operator==(const Results&, const Results&) = default;
};

}  // namespace evote
