#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rb {

/// Purpose tags separating the independent substreams drawn from one seed.
enum class StreamPurpose { kScope, kPerm, kPlanted, kHarness };

std::string_view purpose_tag(StreamPurpose purpose);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** seeded from a single 64-bit word through splitmix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [0, bound). Rejection sampling, so unbiased.
  std::uint64_t bounded(std::uint64_t bound);

  /// Uniform permutation of [0, size) by Fisher-Yates, starting from identity.
  std::vector<int> permutation(int size);

  /// Uniform real in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Substream for (seed, purpose, index). Same inputs give the same draws on
/// every platform.
Xoshiro256 rng_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index);

}  // namespace rb
