#include "evote/voter_id.hpp"

#include <algorithm>

#include "evote/error.hpp"

namespace evote {

VoterId VoterId::parse(std::string_view text) {
  if (text.size() != kWidth ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("voter id must be exactly 13 decimal digits: '" + std::string(text) + "'");
  }
  return VoterId(std::string(text));
}

VoterId VoterId::from_number(std::uint64_t value) {
  if (value >= kSpace) throw ParseError("voter id value out of range");
  std::string digits(kWidth, '0');
  for (std::size_t i = kWidth; i-- > 0 && value != 0; value /= 10) {
    digits[i] = static_cast<char>('0' + value % 10);
  }
  return VoterId(std::move(digits));
}

VoterId generate_id(RandomSource& rng, const IdSet& issued) {
  if (issued.size() >= VoterId::kSpace) throw IdSpaceExhausted("all 10^13 voter ids issued");
  for (;;) {
    VoterId candidate = VoterId::from_number(rng.uniform_below(VoterId::kSpace));
    if (!issued.contains(candidate)) return candidate;
  }
}

}  // namespace evote
