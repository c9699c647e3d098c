#pragma once

#include <array>
#include <cstdint>

namespace cachesim {

/// SplitMix64 step (Steele, Lea, Flood). Advances `state` and returns the
/// next output. Used for seed expansion and hashing, never as the main
/// generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One-shot SplitMix64 hash of a single 64-bit value.
inline std::uint64_t hash64(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

/// Derives the per-trial seed from (master seed, point index, trial index)
/// by chaining SplitMix64 hashes. The chain is order-sensitive, so
/// (a,b,c) and (a,c,b) yield unrelated streams.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t point,
                              std::uint64_t trial) {
  std::uint64_t h = hash64(master);
  h = hash64(h ^ point);
  h = hash64(h ^ trial);
  return h;
}

/// xoshiro256** 1.0 (Blackman, Vigna). Chosen over std:: engines because the
/// algorithm and its double conversion are fully pinned here, independent of
/// any standard-library distribution implementation, so identical seeds give
/// identical streams on every platform.
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed) {
    // SplitMix64 seed expansion; also handles the all-zero seed.
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  std::uint64_t operator()() { return next(); }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Lemire's multiply-shift with
  /// rejection; unbiased and deterministic.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(bound);
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) *
            static_cast<unsigned __int128>(bound);
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace cachesim
