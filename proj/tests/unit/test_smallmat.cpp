#include <cmath>

#include <doctest.h>

#include "lyacert/errors.hpp"
#include "lyacert/model.hpp"
#include "lyacert/smallmat.hpp"
#include "test_support.hpp"

using namespace lyacert;
using testsupport::random_mat4;
using testsupport::random_sym2;

TEST_SUITE("smallmat") {

TEST_CASE("symplectic form invariants") {
  const Mat4& j = symplectic_form();
  CHECK(max_abs(j * j + Mat4::identity()) == 0.0);          // J^2 = -I
  CHECK(max_abs(transpose(j) + j) == 0.0);                  // J^T = -J
}

TEST_CASE("sym_eigen_2x2: exchange matrix") {
  const SymEigen2 e = sym_eigen_2x2(Mat2{{0, 1, 1, 0}});
  CHECK(e.lambda1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.lambda2 == doctest::Approx(1.0).epsilon(1e-14));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // eigenvectors (1,-1)/sqrt(2) and (1,1)/sqrt(2)
  CHECK(std::abs(e.s(0, 0) - inv_sqrt2) < 1e-15);
  CHECK(std::abs(e.s(1, 0) + inv_sqrt2) < 1e-15);
  CHECK(std::abs(e.s(0, 1) - inv_sqrt2) < 1e-15);
  CHECK(std::abs(e.s(1, 1) - inv_sqrt2) < 1e-15);
}

TEST_CASE("sym_eigen_2x2: rank one plus trace") {
  const SymEigen2 e = sym_eigen_2x2(Mat2{{1, 1, 1, 1}});
  CHECK(e.lambda1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e.lambda2 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen_2x2: golden-ratio eigenvalues") {
  // independent oracle: roots of lambda^2 - lambda - 1 = 0 by the quadratic
  // formula
  const double root = std::sqrt(5.0);
  const double lo = 0.5 * (1.0 - root);
  const double hi = 0.5 * (1.0 + root);
  const SymEigen2 e = sym_eigen_2x2(Mat2{{1, 1, 1, 0}});
  CHECK(std::abs(e.lambda1 - lo) < 1e-14);
  CHECK(std::abs(e.lambda2 - hi) < 1e-14);
}

TEST_CASE("sym_eigen_2x2: rejects asymmetric input") {
  CHECK_THROWS_AS(sym_eigen_2x2(Mat2{{0, 1, 0.5, 0}}), ContractViolation);
}

TEST_CASE("sym_eigen_2x2: reconstruction, orthogonality, sign convention") {
  SplitMix64 rng({11, 0});
  for (int i = 0; i < 500; ++i) {
    const Mat2 m = random_sym2(rng, 10.0);
    const SymEigen2 e = sym_eigen_2x2(m);
    CHECK(e.lambda1 <= e.lambda2);
    Mat2 lam;
    lam(0, 0) = e.lambda1;
    lam(1, 1) = e.lambda2;
    CHECK(max_abs(m - e.s * lam * transpose(e.s)) < 1e-10);
    CHECK(max_abs(transpose(e.s) * e.s - Mat2::identity()) < 1e-12);
    for (int col = 0; col < 2; ++col) {
      const double lead = e.s(0, col) != 0.0 ? e.s(0, col) : e.s(1, col);
      CHECK(lead > 0.0);
    }
  }
}

TEST_CASE("qr_4x4: identity and diagonal are fixed points") {
  const Qr4 qi = qr_4x4(Mat4::identity());
  CHECK(max_abs(qi.q - Mat4::identity()) == 0.0);
  CHECK(max_abs(qi.r - Mat4::identity()) == 0.0);

  Mat4 d;
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  d(2, 2) = 3.0;
  d(3, 3) = 4.0;
  const Qr4 qd = qr_4x4(d);
  CHECK(max_abs(qd.q - Mat4::identity()) == 0.0);
  CHECK(max_abs(qd.r - d) == 0.0);
}

TEST_CASE("qr_4x4: seeded roundtrip") {
  SplitMix64 rng({12, 0});
  for (int i = 0; i < 1000; ++i) {
    const Mat4 a = random_mat4(rng, 10.0);
    const Qr4 qr = qr_4x4(a);
    CHECK(max_abs(a - qr.q * qr.r) < 1e-10);
    CHECK(max_abs(transpose(qr.q) * qr.q - Mat4::identity()) < 1e-12);
    for (int k = 0; k < 4; ++k) {
      CHECK(qr.r(k, k) >= 0.0);
      for (int row = k + 1; row < 4; ++row) CHECK(qr.r(row, k) == 0.0);
    }
  }
}

TEST_CASE("op_norm: trivial values and scaling") {
  CHECK(op_norm(Mat4::identity()) == doctest::Approx(1.0).epsilon(1e-12));

  Mat4 d;
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 1.0;
  d(3, 3) = 1.0;
  CHECK(op_norm(d) == doctest::Approx(3.0).epsilon(1e-8));

  // scaling property oracle: 2 * orthogonal has norm exactly 2
  SplitMix64 rng({13, 0});
  for (int i = 0; i < 100; ++i) {
    const Mat4 q = qr_4x4(random_mat4(rng, 5.0)).q;
    CHECK(std::abs(op_norm(2.0 * q) - 2.0) < 1e-8);
  }

  CHECK(op_norm(Mat4{}) == 0.0);
}

TEST_CASE("op_norm: submultiplicative on seeded samples") {
  SplitMix64 rng({14, 0});
  for (int i = 0; i < 200; ++i) {
    const Mat4 a = random_mat4(rng, 4.0);
    const Mat4 b = random_mat4(rng, 4.0);
    CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-8);
  }
}

TEST_CASE("is_symplectic") {
  CHECK(is_symplectic(Mat4::identity(), 1e-12));

  Mat4 d = Mat4::identity();
  d(0, 0) = 2.0;
  CHECK_FALSE(is_symplectic(d, 1e-12));

  const TransferMatrix t = transfer_matrix(3.0, BernoulliConfig{0, 1});
  CHECK(is_symplectic(t.a, 1e-10));

  CHECK_THROWS_AS(is_symplectic(Mat4::identity(), 0.0), ContractViolation);
}

TEST_CASE("det, inverse, matrix_power") {
  CHECK(det(Mat4::identity()) == 1.0);
  CHECK(det(Mat2{{3, 0, 0, 2}}) == 6.0);

  SplitMix64 rng({15, 0});
  for (int i = 0; i < 100; ++i) {
    const Mat4 a = random_mat4(rng, 3.0) + 5.0 * Mat4::identity();
    CHECK(max_abs(inverse(a) * a - Mat4::identity()) < 1e-10);
    CHECK(max_abs(matrix_power(a, 3) - a * a * a) < 1e-9 * std::pow(max_abs(a), 3));
  }
  const Mat4 a = random_mat4(rng, 3.0);
  CHECK(max_abs(matrix_power(a, 0) - Mat4::identity()) == 0.0);
  CHECK(max_abs(matrix_power(a, 1) - a) == 0.0);
  CHECK_THROWS_AS(matrix_power(a, -1), ContractViolation);
  CHECK_THROWS_AS(inverse(Mat4{}), ContractViolation);
}

TEST_CASE("all entries finite after public operations") {
  SplitMix64 rng({16, 0});
  for (int i = 0; i < 50; ++i) {
    const Mat4 a = random_mat4(rng, 10.0);
    const Qr4 qr = qr_4x4(a);
    CHECK(all_finite(qr.q));
    CHECK(all_finite(qr.r));
    CHECK(std::isfinite(op_norm(a)));
    CHECK(std::isfinite(det(a)));
  }
}

}  // TEST_SUITE
