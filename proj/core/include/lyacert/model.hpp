// The two-channel unit-cell model: Bernoulli potential matrices, their
// eigen-data, the closed-form 4x4 transfer matrices, and the four-element
// generator set the certification pipeline runs on.
#pragma once

#include <array>

#include "lyacert/smallmat.hpp"

namespace lyacert {

// Transfer matrices are defined only above every potential eigenvalue; the
// largest one over the Bernoulli support is 2.
inline constexpr double kMinEnergy = 2.0;

struct BernoulliConfig {
  int omega1 = 0;  // in {0, 1}
  int omega2 = 0;  // in {0, 1}

  // enumeration order (0,0), (1,0), (0,1), (1,1)
  int index() const { return omega1 + 2 * omega2; }

  static std::array<BernoulliConfig, 4> all() {
    return {BernoulliConfig{0, 0}, BernoulliConfig{1, 0},
            BernoulliConfig{0, 1}, BernoulliConfig{1, 1}};
  }

  friend bool operator==(const BernoulliConfig&, const BernoulliConfig&) = default;
};

// [[omega1, 1], [1, omega2]]
Mat2 potential_matrix(BernoulliConfig omega);

struct PotentialEigen {
  double lambda1 = 0.0;  // lambda1 <= lambda2
  double lambda2 = 0.0;
  Mat2 s;                // orthogonal, columns ordered to match
};
PotentialEigen potential_eigen(BernoulliConfig omega);

struct TransferMatrix {
  double energy = 0.0;
  BernoulliConfig omega;
  Mat4 a;
  double r1 = 0.0;  // sqrt(energy - lambda1) >= r2
  double r2 = 0.0;  // sqrt(energy - lambda2) > 0
};

// Closed-form one-cell transfer matrix at the given energy; throws
// EnergyOutOfRange unless energy > 2.
TransferMatrix transfer_matrix(double energy, BernoulliConfig omega);

struct GeneratorSet {
  double energy = 0.0;
  std::array<TransferMatrix, 4> mats;  // indexed by BernoulliConfig::index()
  double p = 0.5;                      // Bernoulli parameter of nu
  std::array<double, 4> weights{};     // (1-p)^2, p(1-p), p(1-p), p^2
};

// Generator set with sampling weights for independent Bernoulli(p) channels.
// Requires energy > 2 and 0 < p < 1.
GeneratorSet generator_set(double energy, double p);

// Index sampled from the cumulative weights for a uniform draw u in [0, 1).
// Deterministic tie handling: first interval whose cumulative weight exceeds u.
int sample_config(const std::array<double, 4>& weights, double u);

}  // namespace lyacert
