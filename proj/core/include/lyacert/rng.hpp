// Counter-based pseudorandom stream built on the SplitMix64 finalizer
// (Steele, Lea & Flood 2014). The n-th output is mix(state0 + n * gamma), so
// a (seed, stream) pair fully determines the sample path and distinct streams
// never share state. Replicas of a Monte-Carlo run take consecutive stream
// ids; each simulation step consumes exactly one draw.
#pragma once

#include <cstdint>

namespace lyacert {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

class SplitMix64 {
 public:
  explicit SplitMix64(RngSeed s)
      : state_(mix(s.seed + kGolden) ^ mix(s.stream + 0x1F123BB5159A55E5ULL)) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // uniform in [0, 1) with 53 random mantissa bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace lyacert
