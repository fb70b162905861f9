#include "selftest.hpp"

#include <cmath>
#include <cstdio>

#include "lyacert/liealg.hpp"
#include "lyacert/lyapunov.hpp"
#include "lyacert/model.hpp"
#include "lyacert/rng.hpp"
#include "lyacert/smallmat.hpp"

namespace lyacert::selftest {

namespace {

Mat4 random_mat4(SplitMix64& rng, double scale) {
  Mat4 m;
  for (double& x : m.v) x = scale * (2.0 * rng.next_double() - 1.0);
  return m;
}

Sp2Element random_sp2(SplitMix64& rng) {
  std::array<double, 10> c{};
  for (double& x : c) x = 2.0 * rng.next_double() - 1.0;
  return sp2_from_coords(c);
}

std::string worst_str(double worst, double tol) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst %.3g vs tol %.3g", worst, tol);
  return buf;
}

CheckResult check_transfer_symplectic(double ts) {
  SplitMix64 rng({2024, 0});
  const double tol_sym = 1e-10 * ts;
  const double tol_det = 1e-8 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 200; ++i) {
    const double e = 2.0 + 48.0 * rng.next_double() + 1e-6;
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      const Mat4& j = symplectic_form();
      const double d = max_abs(transpose(t.a) * j * t.a - j);
      worst = std::max(worst, d);
      pass = pass && d < tol_sym && std::abs(det(t.a) - 1.0) < tol_det;
    }
  }
  return {"transfer_symplectic", pass, worst_str(worst, tol_sym)};
}

CheckResult check_eigen_reconstruct(double ts) {
  SplitMix64 rng({2025, 0});
  const double tol = 1e-10 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 200; ++i) {
    Mat2 m;
    m(0, 0) = 10.0 * (2.0 * rng.next_double() - 1.0);
    m(1, 1) = 10.0 * (2.0 * rng.next_double() - 1.0);
    m(0, 1) = m(1, 0) = 10.0 * (2.0 * rng.next_double() - 1.0);
    const SymEigen2 e = sym_eigen_2x2(m);
    Mat2 lam;
    lam(0, 0) = e.lambda1;
    lam(1, 1) = e.lambda2;
    const double d = max_abs(m - e.s * lam * transpose(e.s));
    const double orth = max_abs(transpose(e.s) * e.s - Mat2::identity());
    worst = std::max({worst, d, orth});
    pass = pass && d < tol && orth < 1e-12 * ts;
  }
  return {"eigen_reconstruct", pass, worst_str(worst, tol)};
}

CheckResult check_qr_roundtrip(double ts) {
  SplitMix64 rng({2026, 0});
  const double tol = 1e-10 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 200; ++i) {
    const Mat4 a = random_mat4(rng, 10.0);
    const Qr4 qr = qr_4x4(a);
    const double d = max_abs(a - qr.q * qr.r);
    const double orth = max_abs(transpose(qr.q) * qr.q - Mat4::identity());
    worst = std::max({worst, d, orth});
    pass = pass && d < tol && orth < 1e-12 * ts;
    for (int k = 0; k < 4; ++k) pass = pass && qr.r(k, k) >= 0.0;
  }
  return {"qr_roundtrip", pass, worst_str(worst, tol)};
}

CheckResult check_opnorm(double ts) {
  SplitMix64 rng({2027, 0});
  const double tol = 1e-8 * ts;
  bool pass = std::abs(op_norm(Mat4::identity()) - 1.0) < tol;
  double worst = std::abs(op_norm(Mat4::identity()) - 1.0);
  for (int i = 0; i < 50; ++i) {
    const Qr4 qr = qr_4x4(random_mat4(rng, 5.0));  // q orthogonal
    const double d = std::abs(op_norm(2.0 * qr.q) - 2.0);
    worst = std::max(worst, d);
    pass = pass && d < tol;
  }
  return {"opnorm_scaling", pass, worst_str(worst, tol)};
}

CheckResult check_bracket_antisymmetry(double ts) {
  SplitMix64 rng({2028, 0});
  const double tol = 1e-12 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    const Sp2Element x = random_sp2(rng);
    const Sp2Element y = random_sp2(rng);
    const double d = max_abs(bracket(x, y).z + bracket(y, x).z);
    worst = std::max(worst, d);
    pass = pass && d < tol;
  }
  return {"bracket_antisymmetry", pass, worst_str(worst, tol)};
}

CheckResult check_jacobi_identity(double ts) {
  SplitMix64 rng({2029, 0});
  const double tol = 1e-8 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    const Sp2Element x = random_sp2(rng);
    const Sp2Element y = random_sp2(rng);
    const Sp2Element z = random_sp2(rng);
    const Mat4 sum = bracket(x, bracket(y, z)).z + bracket(y, bracket(z, x)).z +
                     bracket(z, bracket(x, y)).z;
    const double d = max_abs(sum);
    worst = std::max(worst, d);
    pass = pass && d < tol;
  }
  return {"jacobi_identity", pass, worst_str(worst, tol)};
}

CheckResult check_coords_roundtrip(double ts) {
  SplitMix64 rng({2030, 0});
  const double tol = 1e-10 * ts;
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    const Sp2Element x = random_sp2(rng);
    const double d = max_abs(sp2_from_coords(sp2_from_matrix(x.z).coords).z - x.z);
    worst = std::max(worst, d);
    pass = pass && d < tol;
  }
  return {"coords_roundtrip", pass, worst_str(worst, tol)};
}

CheckResult check_log_roundtrip(double ts) {
  const double tol = 1e-8 * ts;
  double worst = 0.0;
  bool pass = true;
  for (const double e : {2.5, 3.0, 7.5}) {
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      const PowerNeighborhood pn = power_in_neighborhood(t, 100000, 0.2);
      const LogWitness w = principal_log_power(t, pn.hit);
      worst = std::max(worst, w.roundtrip_err);
      pass = pass && w.roundtrip_err < tol;
    }
  }
  return {"log_roundtrip", pass, worst_str(worst, tol)};
}

GeneratorSet hook_generators(const Mat4& a) {
  GeneratorSet g;
  g.energy = 3.0;
  g.p = 0.5;
  g.weights = {0.25, 0.25, 0.25, 0.25};
  for (int i = 0; i < 4; ++i) {
    g.mats[static_cast<std::size_t>(i)].energy = 3.0;
    g.mats[static_cast<std::size_t>(i)].a = a;
    g.mats[static_cast<std::size_t>(i)].r1 = 1.0;
    g.mats[static_cast<std::size_t>(i)].r2 = 1.0;
  }
  return g;
}

CheckResult check_lyapunov_identity(double) {
  const LyapunovEstimate est =
      estimate_spectrum(hook_generators(Mat4::identity()), 1000, 2, 10, {7, 0});
  bool pass = true;
  for (const double g : est.gammas) pass = pass && g == 0.0;
  return {"lyapunov_identity", pass, "identity product gives exactly zero exponents"};
}

CheckResult check_lyapunov_diagonal(double ts) {
  Mat4 d;
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  d(2, 2) = 0.5;
  d(3, 3) = 1.0 / 3.0;
  const LyapunovEstimate est =
      estimate_spectrum(hook_generators(d), 1000, 2, 10, {7, 0});
  const double tol = 1e-10 * ts;
  const std::array<double, 4> want = {std::log(3.0), std::log(2.0),
                                      -std::log(2.0), -std::log(3.0)};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(est.gammas[static_cast<std::size_t>(i)] -
                                     want[static_cast<std::size_t>(i)]));
  return {"lyapunov_diagonal", worst < tol, worst_str(worst, tol)};
}

}  // namespace

std::vector<CheckResult> run_all(double tol_scale) {
  return {
      check_transfer_symplectic(tol_scale),
      check_eigen_reconstruct(tol_scale),
      check_qr_roundtrip(tol_scale),
      check_opnorm(tol_scale),
      check_bracket_antisymmetry(tol_scale),
      check_jacobi_identity(tol_scale),
      check_coords_roundtrip(tol_scale),
      check_log_roundtrip(tol_scale),
      check_lyapunov_identity(tol_scale),
      check_lyapunov_diagonal(tol_scale),
  };
}

}  // namespace lyacert::selftest
