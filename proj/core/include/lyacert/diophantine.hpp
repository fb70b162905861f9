// Simultaneous Diophantine approximation: find one integer m making both
// m*r1 and m*r2 land near multiples of 2*pi, so that the m-th power of a
// transfer matrix returns near the identity.
#pragma once

#include <cstdint>

#include "lyacert/model.hpp"

namespace lyacert {

struct DiophantineHit {
  std::int64_t m = 0;       // smallest qualifying integer in [1, big_m]
  std::int64_t x1 = 0;      // nearest integer to m*r1 / (2*pi)
  std::int64_t x2 = 0;
  double err1 = 0.0;        // m*r1 - 2*pi*x1
  double err2 = 0.0;
  double bound = 0.0;       // 2*pi / sqrt(big_m)
};

// Exhaustive scan over m = 1..big_m for the smallest m with both
// |m*r_i - 2*pi*x_i| < 2*pi/sqrt(big_m). Requires big_m >= 4 and r1, r2 > 0.
// Throws NoHitFound when the scan completes empty (the caller should enlarge
// big_m).
DiophantineHit simultaneous_approx(double r1, double r2, std::int64_t big_m);

struct PowerNeighborhood {
  DiophantineHit hit;
  Mat4 power;               // a^m by binary exponentiation
  double dist = 0.0;        // op_norm(a^m - I)
  std::int64_t big_m_used = 0;
};

// Searches for a hit and verifies that a^m actually lands within delta of the
// identity in operator norm. On failure the window grows fourfold per retry;
// after `retries` extra attempts a NeighborhoodMiss reports the final
// distance and window.
PowerNeighborhood power_in_neighborhood(const TransferMatrix& a,
                                        std::int64_t big_m, double delta,
                                        int retries = 3);

}  // namespace lyacert
