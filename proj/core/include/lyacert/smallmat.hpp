// Fixed-size dense real linear algebra for the 2x2 and 4x4 matrices that the
// whole pipeline runs on. Row-major value types, no allocation anywhere.
#pragma once

#include <array>
#include <cstdint>

namespace lyacert {

struct Mat2 {
  std::array<double, 4> v{};

  double& operator()(int r, int c) { return v[static_cast<std::size_t>(2 * r + c)]; }
  double operator()(int r, int c) const { return v[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
};

struct Mat4 {
  std::array<double, 16> v{};

  double& operator()(int r, int c) { return v[static_cast<std::size_t>(4 * r + c)]; }
  double operator()(int r, int c) const { return v[static_cast<std::size_t>(4 * r + c)]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 transpose(const Mat2& a);

Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(double s, const Mat4& a);
Mat4 transpose(const Mat4& a);

// Largest entry magnitude (the entrywise infinity norm used by every
// tolerance check in the pipeline).
double max_abs(const Mat2& a);
double max_abs(const Mat4& a);

double det(const Mat2& a);
double det(const Mat4& a);

// Gauss-Jordan with partial pivoting; throws ContractViolation on a
// numerically singular input.
Mat4 inverse(const Mat4& a);

// a^n by binary exponentiation, n >= 0.
Mat4 matrix_power(const Mat4& a, std::int64_t n);

// [[s, 0], [0, s]]
Mat4 block_diag(const Mat2& upper, const Mat2& lower);

bool all_finite(const Mat2& a);
bool all_finite(const Mat4& a);

// The standard symplectic form J = [[0, I2], [-I2, 0]].
const Mat4& symplectic_form();

// True iff ||a^T J a - J||_max <= tol. tol must be positive.
bool is_symplectic(const Mat4& a, double tol);

// Eigen-decomposition of a symmetric 2x2: m = s diag(lambda1, lambda2) s^T
// with lambda1 <= lambda2, s orthogonal, and each column's first nonzero
// component positive so the factorization is unique.
struct SymEigen2 {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Mat2 s;
};
SymEigen2 sym_eigen_2x2(const Mat2& m);

// Householder QR with the diagonal of r made nonnegative; a = q * r.
struct Qr4 {
  Mat4 q, r;
};
Qr4 qr_4x4(const Mat4& a);

// Spectral norm (largest singular value).
double op_norm(const Mat4& a);

}  // namespace lyacert
