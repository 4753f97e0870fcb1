#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "evote/random.hpp"

namespace evote {

/// Anonymous 13-digit voter identifier. Held as text so leading zeros survive.
class VoterId {
 public:
  static constexpr std::size_t kWidth = 13;
  static constexpr std::uint64_t kSpace = 10'000'000'000'000ULL;

  /// Throws ParseError unless `text` is exactly 13 decimal digits.
  static VoterId parse(std::string_view text);
  static VoterId from_number(std::uint64_t value);

  /// "0000000000000".
  VoterId() : digits_(kWidth, '0') {}

  const std::string& digits() const noexcept { return digits_; }

  friend auto operator<=>(const VoterId&, const VoterId&) = default;
  friend bool operator==(const VoterId&, const VoterId&) = default;

 private:
  explicit VoterId(std::string digits) : digits_(std::move(digits)) {}
  std::string digits_;
};

struct VoterIdHash {
  std::size_t operator()(const VoterId& id) const noexcept {
    return std::hash<std::string>{}(id.digits());
  }
};

using IdSet = std::unordered_set<VoterId, VoterIdHash>;

/// Fresh id uniform over the values not in `issued`; re-draws on collision.
/// The caller is responsible for inserting the result into `issued`.
VoterId generate_id(RandomSource& rng, const IdSet& issued);

}  // namespace evote
