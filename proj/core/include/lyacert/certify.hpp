// Per-energy density certificates (Diophantine search -> logarithms -> Lie
// closure), energy-grid sweeps that bracket the exceptional set, and
// cross-validation against Monte-Carlo Lyapunov estimates.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lyacert/diophantine.hpp"
#include "lyacert/liealg.hpp"
#include "lyacert/lyapunov.hpp"
#include "lyacert/model.hpp"

namespace lyacert {

struct CertifyConfig {
  std::int64_t big_m = 1000000;
  double delta = 0.1;     // identity-neighborhood radius in operator norm
  double svd_tol = 1e-7;  // relative rank threshold
  int retries = 3;        // window enlargements in the Diophantine stage
};

enum class Implication {
  kSeparatedPositiveExponents,  // certificate holds: gamma1 > gamma2 > 0
  kInconclusive,
};

const char* to_string(Implication implication);

struct DensityCertificate {
  double energy = 0.0;
  bool certified = false;  // rank == 10 and all four powers within delta
  int rank = 0;
  double rank_margin = 0.0;  // smallest retained singular value (relative)
  double delta = 0.0;
  std::int64_t big_m = 0;
  std::array<std::optional<DiophantineHit>, 4> hits;  // by BernoulliConfig index
  std::array<double, 4> dists{};                      // op_norm(A^m - I)
  double det_v1 = 0.0;
  double det_v2 = 0.0;
  bool dets_independent = false;
  Implication implication = Implication::kInconclusive;
  std::string diagnostic;  // empty on the clean path
};

// Full pipeline at one energy. EnergyOutOfRange propagates; a Diophantine
// NeighborhoodMiss is not an error and surfaces as certified = false with a
// diagnostic.
DensityCertificate certify_energy(double energy, const CertifyConfig& cfg);

// Same pipeline on a caller-supplied generator set (the p value is
// irrelevant to the certificate).
DensityCertificate certify_generators(const GeneratorSet& gen,
                                      const CertifyConfig& cfg);

// Audit replay: recompute a certificate from embedded hits, skipping the
// search. Bitwise-reproduces rank and determinants of the original.
DensityCertificate replay_certificate(double energy,
                                      const std::array<DiophantineHit, 4>& hits,
                                      const CertifyConfig& cfg);

struct SuspectedInterval {
  double e_lo = 0.0;       // largest energy certified below the cluster
  double e_hi = 0.0;       // smallest energy certified above the cluster
  int min_rank = 0;        // smallest rank observed inside
  double margin_min = 0.0; // smallest rank margin observed inside
  double margin_at = 0.0;  // energy of that margin minimum
};

struct LyapunovCheck {
  LyapunovEstimate estimate;
  SeparationReport report;
  bool consistent = false;
};

struct SweepConfig {
  CertifyConfig cert;
  int jobs = 0;             // certification worker threads (0 = hardware)
  double p = 0.5;           // Bernoulli parameter for Lyapunov checks
  int refine_steps = 20;    // bisection steps per cluster edge
  int lyap_every = 32;      // cross-check every k-th certified point (0 = off)
  std::int64_t lyap_steps = 1000000;
  int lyap_replicas = 16;
  std::int64_t lyap_burn_in = 1000;
  RngSeed seed;
};

struct SweepReport {
  std::vector<double> grid;
  std::vector<DensityCertificate> certificates;  // one per grid point
  std::vector<DensityCertificate> refinements;   // bisection probes, in order
  std::vector<SuspectedInterval> suspected;
  std::vector<LyapunovCheck> lyapunov_checks;
};

// Certifies an inclusive linear grid of n_grid energies on [e_min, e_max],
// then bisects around every uncertified cluster to bracket the rank-drop
// locus. Per-energy failures become diagnostics, never abort the sweep.
// Requires 2 < e_min < e_max and n_grid >= 2.
SweepReport sweep(double e_min, double e_max, int n_grid, const SweepConfig& cfg);

struct CrossValidation {
  bool consistent = false;
  std::string detail;
};

// A certified energy must show statistically separated positive exponents;
// the converse is not required. Energies must match exactly.
CrossValidation cross_validate(const DensityCertificate& cert,
                               const LyapunovEstimate& est);

}  // namespace lyacert
