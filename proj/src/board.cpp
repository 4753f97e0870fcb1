#include "evote/board.hpp"

#include <algorithm>
#include <unordered_map>

#include "evote/error.hpp"

namespace evote {

Board Board::assemble(ElectionHeader header, std::vector<std::string> candidates,
                      std::vector<Pairing> entries, std::uint64_t signings_count,
                      std::optional<std::vector<std::string>> voter_names) {
  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!rank.emplace(candidates[i], i).second) {
      throw BoardError("duplicate candidate '" + candidates[i] + "'");
    }
  }
  for (const auto& e : entries) {
    if (!rank.contains(e.choice)) throw BoardError("entry for unknown choice '" + e.choice + "'");
  }
  std::sort(entries.begin(), entries.end(), [&](const Pairing& a, const Pairing& b) {
    const std::size_t ra = rank.at(a.choice), rb = rank.at(b.choice);
    return ra != rb ? ra < rb : a.id < b.id;
  });

  Board board;
  board.by_id_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [it, inserted] = board.by_id_.emplace(entries[i].id, i);
    if (!inserted) {
      const Pairing& first = entries[it->second];
      if (first.choice == entries[i].choice) {
        throw BoardError("duplicate pairing (" + first.choice + ", " + first.id.digits() + ")");
      }
      throw BoardError("id " + first.id.digits() + " appears under both '" + first.choice +
                       "' and '" + entries[i].choice + "'");
    }
  }
  board.header_ = std::move(header);
  board.candidates_ = std::move(candidates);
  board.entries_ = std::move(entries);
  board.signings_count_ = signings_count;
  board.voter_names_ = std::move(voter_names);
  return board;
}

std::optional<std::string> Board::find(const VoterId& id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return entries_[it->second].choice;
}

std::string_view to_string(AuditVerdict verdict) {
  return verdict == AuditVerdict::clean ? "clean" : "surplus_detected";
}

Board publish(const BoardSubmission& submission) {
  std::vector<Pairing> entries;
  entries.reserve(submission.entries.size());
  for (const auto& e : submission.entries) entries.push_back({e.choice, e.id});
  return Board::assemble(submission.header, submission.candidates, std::move(entries),
                         submission.signings_count, submission.voter_names);
}

namespace {

std::vector<std::int64_t> published_counts(const Board& board, const ElectionConfig& config) {
  std::vector<std::int64_t> counts(config.candidates.size(), 0);
  for (const auto& e : board.entries()) {
    const auto pos = config.position(e.choice);
    if (!pos) throw BoardError("board choice '" + e.choice + "' is not on the ballot");
    ++counts[*pos];
  }
  return counts;
}

// Index of the largest value, lowest index first on ties.
std::size_t leader(const std::vector<std::int64_t>& values, bool* tied = nullptr) {
  const auto best = std::max_element(values.begin(), values.end());
  if (tied) *tied = std::count(values.begin(), values.end(), *best) > 1;
  return static_cast<std::size_t>(best - values.begin());
}

}  // namespace

Results tally(const Board& board, const ElectionConfig& config) {
  const auto counts = published_counts(board, config);
  const auto seed = static_cast<std::int64_t>(config.bootstrap_per_candidate);
  Results results;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::int64_t final_count = counts[i] - seed;
    if (final_count < 0) {
      throw TallyInconsistency("candidate '" + config.candidates[i] + "' has " +
                               std::to_string(counts[i]) + " entries, fewer than the " +
                               std::to_string(seed) + " bootstrap votes");
    }
    results.candidates.push_back({config.candidates[i], counts[i], final_count});
  }
  return results;
}

std::optional<std::string> lookup(const Board& board, const VoterId& id) { return board.find(id); }

AuditReport audit_counts(const Board& board, const ElectionConfig& config) {
  const auto counts = published_counts(board, config);
  const auto m = static_cast<std::int64_t>(config.candidates.size());
  const auto seed = static_cast<std::int64_t>(config.bootstrap_per_candidate);

  AuditReport report;
  report.expected_entries =
      static_cast<std::int64_t>(board.signings_count() * config.selections_per_voter) + m * seed;
  report.actual_entries = static_cast<std::int64_t>(board.entries().size());
  report.surplus = report.actual_entries - report.expected_entries;
  if (report.surplus < 0) throw MissingVotes(-report.surplus);

  if (const auto& names = board.voter_names(); names && names->size() != board.signings_count()) {
    throw VoterRollMismatch("published " + std::to_string(names->size()) +
                            " voter names for " + std::to_string(board.signings_count()) +
                            " signings");
  }

  std::vector<std::int64_t> finals(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) finals[i] = counts[i] - seed;
  const std::size_t before = leader(finals, &report.tie_flag);
  report.winner_before = config.candidates[before];

  if (report.surplus > 0) {
    report.verdict = AuditVerdict::surplus_detected;
    report.adjustment = Adjustment{report.winner_before, report.surplus};
    finals[before] -= report.surplus;
  }
  report.winner_after = config.candidates[leader(finals)];
  return report;
}

Results apply_adjustment(Results results, const AuditReport& report) {
  results.surplus = report.surplus;
  results.adjusted = report.adjustment;
  if (report.adjustment) {
    for (auto& c : results.candidates) {
      if (c.choice == report.adjustment->choice) c.final_count -= report.adjustment->amount;
    }
  }
  return results;
}

}  // namespace evote
