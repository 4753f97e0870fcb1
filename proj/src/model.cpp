#include "evote/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "evote/error.hpp"

namespace evote {

BootstrapCountMismatch::BootstrapCountMismatch(std::vector<CountDelta> deltas)
    : Error([&] {
        std::string msg = "bootstrap batch counts differ from expected:";
        for (const auto& d : deltas) {
          msg += ' ' + d.choice + ':' + (d.delta > 0 ? "+" : "") + std::to_string(d.delta);
        }
        return msg;
      }()),
      deltas_(std::move(deltas)) {}

void ElectionConfig::validate() const {
  if (candidates.empty()) throw ConfigError("election needs at least one candidate");
  std::unordered_set<std::string> seen;
  for (const auto& c : candidates) {
    if (c.empty()) throw ConfigError("empty candidate label");
    if (c.find_first_of("\t\n") != std::string::npos) {
      throw ConfigError("candidate label contains tab or newline: '" + c + "'");
    }
    if (!seen.insert(c).second) throw ConfigError("duplicate candidate label '" + c + "'");
  }
  for (const std::string* field : {&header.title, &header.date, &header.precinct}) {
    if (field->find('\n') != std::string::npos) throw ConfigError("header field contains newline");
  }
  if (selections_per_voter == 0) throw ConfigError("selections_per_voter must be positive");
  // A single-candidate ballot still admits k = 1: there is nothing else to pair.
  if (candidates.size() > 1 && selections_per_voter >= candidates.size()) {
    throw ConfigError("selections_per_voter must be smaller than the number of candidates");
  }
  if (candidates.size() == 1 && selections_per_voter != 1) {
    throw ConfigError("a one-candidate ballot allows exactly one selection");
  }
  if (registered_voters == 0) throw ConfigError("registered_voters must be positive");
  if (full_bootstrap_mode && bootstrap_per_candidate != registered_voters) {
    throw ConfigError("full_bootstrap_mode requires bootstrap_per_candidate == registered_voters");
  }
}

std::optional<std::size_t> ElectionConfig::position(std::string_view choice) const {
  const auto it = std::find(candidates.begin(), candidates.end(), choice);
  if (it == candidates.end()) return std::nullopt;
  return static_cast<std::size_t>(it - candidates.begin());
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::real: return "real";
    case Origin::bootstrap: return "bootstrap";
    case Origin::fraudulent: return "fraudulent";
  }
  return "real";
}

Origin origin_from_string(std::string_view text) {
  if (text == "real") return Origin::real;
  if (text == "bootstrap") return Origin::bootstrap;
  if (text == "fraudulent") return Origin::fraudulent;
  throw ParseError("unknown entry origin '" + std::string(text) + "'");
}

const CandidateResult& Results::at(std::string_view choice) const {
  for (const auto& c : candidates) {
    if (c.choice == choice) return c;
  }
  throw std::out_of_range("no result for '" + std::string(choice) + "'");
}

}  // namespace evote
