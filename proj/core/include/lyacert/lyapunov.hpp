// Monte-Carlo estimation of the four Lyapunov exponents of the i.i.d.
// transfer-matrix product, by per-step QR re-orthonormalization with
// replica-based standard errors.
#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "lyacert/model.hpp"
#include "lyacert/rng.hpp"

namespace lyacert {

struct LyapunovEstimate {
  double energy = 0.0;
  std::array<double, 4> gammas{};   // sorted descending
  std::array<double, 4> stderrs{};  // paired with gammas
  std::int64_t n_steps = 0;
  int n_replicas = 0;
  std::int64_t burn_in = 0;
  RngSeed seed;
};

// One QR step per matrix draw: sample omega by the generator weights, factor
// A*Q = Q'R, accumulate log diag(R) after burn_in; per replica
//   gamma_i = sum log R_ii / (n_steps - burn_in),
// replica r drawing from stream seed.stream + r. Means and standard errors
// are taken across replicas, then the four channels are sorted descending.
// Requires n_steps >= max(1, 10*burn_in), burn_in >= 0, n_replicas >= 1.
// Throws DegenerateFrame if an R diagonal entry collapses to zero.
// Replicas run concurrently up to `jobs` threads (0 = hardware default); the
// result is identical for any thread count.
LyapunovEstimate estimate_spectrum(const GeneratorSet& gen, std::int64_t n_steps,
                                   int n_replicas, std::int64_t burn_in,
                                   RngSeed seed, int jobs = 0);

// (|gamma1 + gamma4|, |gamma2 + gamma3|): the testable form of the symplectic
// symmetry of the spectrum.
std::pair<double, double> symmetry_defect(const LyapunovEstimate& est);

struct SeparationReport {
  double gap12 = 0.0;             // gamma1 - gamma2
  double positivity_margin = 0.0; // gamma2
  bool significant = false;       // gap > 3(s1+s2) and gamma2 > 3 s2
};
SeparationReport separation_report(const LyapunovEstimate& est);

}  // namespace lyacert
