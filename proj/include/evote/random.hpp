#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace evote {

// Seed for a named sub-stream: splitmix64(seed ^ fnv1a64(label)).
// Every consumer of randomness in a run derives its own stream this way,
// so adding or reordering consumers never perturbs the others.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label);

/// Copyable source of 64-bit draws. Copies continue independently from the
/// same state.
class RandomSource {
 public:
  /// xoshiro256** seeded through splitmix64.
  static RandomSource seeded(std::uint64_t seed);
  static RandomSource stream(std::uint64_t seed, std::string_view label);
  /// Replays `draws` in order and throws std::out_of_range once exhausted.
  static RandomSource scripted(std::vector<std::uint64_t> draws);

  std::uint64_t next();

  /// Uniform on [0, bound) by rejection; bound must be positive. A bound of 1
  /// consumes no draw.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Index drawn with probability proportional to `weights`. Falls back to a
  /// uniform pick when every weight is zero.
  std::size_t pick_weighted(std::span<const double> weights);

  void fill(std::span<std::uint8_t> out);

 private:
  explicit RandomSource(std::function<std::uint64_t()> next) : next_(std::move(next)) {}
  std::function<std::uint64_t()> next_;
};

}  // namespace evote
