// Deterministic random streams for sampling and simulation.
//
// xoshiro256** seeded through splitmix64; per-instance streams are derived
// from (master seed, instance index) so results never depend on how work is
// split across threads. Only uint64 arithmetic is used, so sequences are
// identical on every platform.
#pragma once

#include <cstdint>

#include "cutbound/rational.hpp"

namespace cutbound {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xFF51AFD7ED558CCDULL;
  z ^= z >> 33;
  z *= 0xC4CEB9FE1A85EC53ULL;
  z ^= z >> 33;
  return z;
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64(sm);
  }

  // Stream for one simulation instance; independent of worker scheduling.
  static RandomStream for_instance(std::uint64_t master_seed, std::uint64_t instance) {
    return RandomStream(detail::mix64(
        master_seed ^ detail::mix64(instance * 0x9E3779B97F4A7C15ULL + 0x7F4A7C15ULL)));
  }

  std::uint64_t next() {
    const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  // Unbiased uniform draw from [0, bound) by masked rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound < 2) return 0;
    std::uint64_t mask = ~0ULL >> __builtin_clzll(bound - 1);
    std::uint64_t r;
    do {
      r = next() & mask;
    } while (r >= bound);
    return r;
  }

  // Same contract for arbitrary-precision bounds.
  BigInt below_big(const BigInt& bound) {
    if (bound < 2) return 0;
    unsigned bits = boost::multiprecision::msb(BigInt(bound - 1)) + 1;
    unsigned words = (bits + 63) / 64;
    unsigned top_bits = bits - 64 * (words - 1);
    std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    BigInt r;
    do {
      r = 0;
      for (unsigned w = 0; w < words; ++w) {
        std::uint64_t chunk = next();
        if (w + 1 == words) chunk &= top_mask;
        r |= BigInt(chunk) << (64 * w);
      }
    } while (r >= bound);
    return r;
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace cutbound
