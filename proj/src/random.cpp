#include "evote/random.hpp"

#include <array>
#include <limits>
#include <memory>
#include <stdexcept>

namespace evote {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

struct Xoshiro256 {
  std::array<std::uint64_t, 4> s;

  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& word : s) word = splitmix64(seed);
  }

  std::uint64_t operator()() {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }
};

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t state = seed ^ fnv1a64(label);
  return splitmix64(state);
}

RandomSource RandomSource::seeded(std::uint64_t seed) {
  return RandomSource(Xoshiro256(seed));
}

RandomSource RandomSource::stream(std::uint64_t seed, std::string_view label) {
  return seeded(derive_stream_seed(seed, label));
}

RandomSource RandomSource::scripted(std::vector<std::uint64_t> draws) {
  return RandomSource([draws = std::move(draws), pos = std::size_t{0}]() mutable {
    if (pos >= draws.size()) throw std::out_of_range("scripted random source exhausted");
    return draws[pos++];
  });
}

std::uint64_t RandomSource::next() { return next_(); }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  if (bound == 1) return 0;
  // Reject the top 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  const std::uint64_t last_ok = std::numeric_limits<std::uint64_t>::max() - excess;
  for (;;) {
    const std::uint64_t x = next_();
    if (x <= last_ok) return x % bound;
  }
}

std::size_t RandomSource::pick_weighted(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("pick_weighted: no weights");
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return static_cast<std::size_t>(uniform_below(weights.size()));
  // 53 random bits give a double in [0, 1).
  const double u = static_cast<double>(next_() >> 11) * 0x1.0p-53 * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last_positive;
}

void RandomSource::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = next_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xff);
      word >>= 8;
    }
  }
}

}  // namespace evote
