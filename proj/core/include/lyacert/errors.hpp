#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lyacert {

// A precondition of a public operation was violated by the caller.
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested energy is at or below the spectral floor E = 2 where the
// closed-form transfer matrix is not defined.
struct EnergyOutOfRange : std::runtime_error {
  explicit EnergyOutOfRange(double energy)
      : std::runtime_error("energy " + std::to_string(energy) +
                           " out of range: transfer matrices require E > 2"),
        energy(energy) {}
  double energy;
};

// Exhaustive scan over m in [1, big_m] found no simultaneous hit.
struct NoHitFound : std::runtime_error {
  NoHitFound(double r1, double r2, std::int64_t big_m)
      : std::runtime_error("no simultaneous approximation for (r1=" +
                           std::to_string(r1) + ", r2=" + std::to_string(r2) +
                           ") with m <= " + std::to_string(big_m)),
        r1(r1), r2(r2), big_m(big_m) {}
  double r1, r2;
  std::int64_t big_m;
};

// Matrix power never entered the requested identity neighborhood, even
// after enlarging the search window.
struct NeighborhoodMiss : std::runtime_error {
  NeighborhoodMiss(double dist, double delta, std::int64_t big_m)
      : std::runtime_error("power stayed at distance " + std::to_string(dist) +
                           " from identity (target " + std::to_string(delta) +
                           ", final big_m " + std::to_string(big_m) + ")"),
        dist(dist), delta(delta), big_m(big_m) {}
  double dist, delta;
  std::int64_t big_m;
};

// The orthonormal frame collapsed during QR accumulation (zero R diagonal).
struct DegenerateFrame : std::runtime_error {
  explicit DegenerateFrame(std::int64_t step)
      : std::runtime_error("degenerate frame at step " + std::to_string(step)),
        step(step) {}
  std::int64_t step;
};

// exp(log) failed to reproduce the matrix power within tolerance.
struct RoundtripFailure : std::runtime_error {
  explicit RoundtripFailure(double err)
      : std::runtime_error("matrix log/exp roundtrip error " +
                           std::to_string(err) + " exceeds tolerance"),
        err(err) {}
  double err;
};

}  // namespace lyacert
