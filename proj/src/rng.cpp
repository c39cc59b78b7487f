#include "rb/rng.hpp"

#include <numeric>
#include <utility>

namespace rb {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::string_view purpose_tag(StreamPurpose purpose) {
  switch (purpose) {
    case StreamPurpose::kScope:
      return "scope";
    case StreamPurpose::kPerm:
      return "perm";
    case StreamPurpose::kPlanted:
      return "planted";
    case StreamPurpose::kHarness:
      return "harness";
  }
  return "";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256::bounded(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Values below 2^64 mod bound would over-represent the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x < threshold);
  return x % bound;
}

std::vector<int> Xoshiro256::permutation(int size) {
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = size - 1; i >= 1; --i) {
    const auto j = static_cast<int>(bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

double Xoshiro256::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Xoshiro256 rng_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
  return Xoshiro256(seed ^ fnv1a64(purpose_tag(purpose)) ^ index);
}

}  // namespace rb
