#include "lyacert/model.hpp"

#include <cmath>

#include "lyacert/errors.hpp"

namespace lyacert {

Mat2 potential_matrix(BernoulliConfig omega) {
  if ((omega.omega1 != 0 && omega.omega1 != 1) ||
      (omega.omega2 != 0 && omega.omega2 != 1))
    throw ContractViolation("potential_matrix: omega components must be 0 or 1");
  return Mat2{{static_cast<double>(omega.omega1), 1.0,
               1.0, static_cast<double>(omega.omega2)}};
}

PotentialEigen potential_eigen(BernoulliConfig omega) {
  const SymEigen2 e = sym_eigen_2x2(potential_matrix(omega));
  return PotentialEigen{e.lambda1, e.lambda2, e.s};
}

TransferMatrix transfer_matrix(double energy, BernoulliConfig omega) {
  if (!(energy > kMinEnergy)) throw EnergyOutOfRange(energy);

  const PotentialEigen pe = potential_eigen(omega);
  TransferMatrix t;
  t.energy = energy;
  t.omega = omega;
  t.r1 = std::sqrt(energy - pe.lambda1);
  t.r2 = std::sqrt(energy - pe.lambda2);

  // per-channel rotation-like block [[cos r, sin r / r], [-r sin r, cos r]]
  Mat4 c;
  const double rs[2] = {t.r1, t.r2};
  for (int i = 0; i < 2; ++i) {
    const double r = rs[i];
    c(i, i) = std::cos(r);
    c(i, i + 2) = std::sin(r) / r;
    c(i + 2, i) = -r * std::sin(r);
    c(i + 2, i + 2) = std::cos(r);
  }
  const Mat4 sb = block_diag(pe.s, pe.s);
  t.a = sb * c * transpose(sb);

  if (!all_finite(t.a) || !is_symplectic(t.a, 1e-10) ||
      std::abs(det(t.a) - 1.0) > 1e-8)
    throw ContractViolation("transfer_matrix: constructed matrix violates invariants");
  return t;
}

GeneratorSet generator_set(double energy, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ContractViolation("generator_set: p must lie in (0, 1)");
  GeneratorSet g;
  g.energy = energy;
  g.p = p;
  for (const BernoulliConfig omega : BernoulliConfig::all())
    g.mats[static_cast<std::size_t>(omega.index())] = transfer_matrix(energy, omega);
  const double q = 1.0 - p;
  g.weights = {q * q, p * q, p * q, p * p};
  return g;
}

int sample_config(const std::array<double, 4>& weights, double u) {
  double cum = 0.0;
  for (int k = 0; k < 3; ++k) {
    cum += weights[static_cast<std::size_t>(k)];
    if (u < cum) return k;
  }
  return 3;
}

}  // namespace lyacert
