#include "lyacert/smallmat.hpp"

#include <cmath>

#include "lyacert/errors.hpp"
#include "jacobi_sym.hpp"

namespace lyacert {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return c;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 4; ++i) c.v[i] = a.v[i] + b.v[i];
  return c;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 4; ++i) c.v[i] = a.v[i] - b.v[i];
  return c;
}

Mat2 transpose(const Mat2& a) {
  return Mat2{{a.v[0], a.v[2], a.v[1], a.v[3]}};
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 16; ++i) c.v[i] = a.v[i] + b.v[i];
  return c;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 16; ++i) c.v[i] = a.v[i] - b.v[i];
  return c;
}

Mat4 operator*(double s, const Mat4& a) {
  Mat4 c;
  for (int i = 0; i < 16; ++i) c.v[i] = s * a.v[i];
  return c;
}

Mat4 transpose(const Mat4& a) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c(i, j) = a(j, i);
  return c;
}

double max_abs(const Mat2& a) {
  double m = 0.0;
  for (double x : a.v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const Mat4& a) {
  double m = 0.0;
  for (double x : a.v) m = std::max(m, std::abs(x));
  return m;
}

double det(const Mat2& a) { return a.v[0] * a.v[3] - a.v[1] * a.v[2]; }

double det(const Mat4& a) {
  // Laplace expansion over 2x2 complementary minors of the first two rows.
  const double s0 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double s1 = a(0, 0) * a(1, 2) - a(0, 2) * a(1, 0);
  const double s2 = a(0, 0) * a(1, 3) - a(0, 3) * a(1, 0);
  const double s3 = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  const double s4 = a(0, 1) * a(1, 3) - a(0, 3) * a(1, 1);
  const double s5 = a(0, 2) * a(1, 3) - a(0, 3) * a(1, 2);

  const double c5 = a(2, 2) * a(3, 3) - a(2, 3) * a(3, 2);
  const double c4 = a(2, 1) * a(3, 3) - a(2, 3) * a(3, 1);
  const double c3 = a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1);
  const double c2 = a(2, 0) * a(3, 3) - a(2, 3) * a(3, 0);
  const double c1 = a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0);
  const double c0 = a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0);

  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

Mat4 inverse(const Mat4& a) {
  // Gauss-Jordan on [a | I] with partial pivoting.
  double m[4][8];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i][j] = a(i, j);
      m[i][j + 4] = (i == j) ? 1.0 : 0.0;
    }
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0)
      throw ContractViolation("inverse: singular 4x4 matrix");
    if (piv != col)
      for (int j = 0; j < 8; ++j) std::swap(m[piv][j], m[col][j]);
    const double d = m[col][col];
    for (int j = 0; j < 8; ++j) m[col][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 8; ++j) m[r][j] -= f * m[col][j];
    }
  }
  Mat4 inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv(i, j) = m[i][j + 4];
  return inv;
}

Mat4 matrix_power(const Mat4& a, std::int64_t n) {
  if (n < 0) throw ContractViolation("matrix_power: negative exponent");
  Mat4 result = Mat4::identity();
  Mat4 base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Mat4 block_diag(const Mat2& upper, const Mat2& lower) {
  Mat4 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = upper(i, j);
      m(i + 2, j + 2) = lower(i, j);
    }
  }
  return m;
}

bool all_finite(const Mat2& a) {
  for (double x : a.v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Mat4& a) {
  for (double x : a.v)
    if (!std::isfinite(x)) return false;
  return true;
}

const Mat4& symplectic_form() {
  static const Mat4 j = [] {
    Mat4 m;
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = -1.0;
    m(3, 1) = -1.0;
    return m;
  }();
  return j;
}

bool is_symplectic(const Mat4& a, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("is_symplectic: tol must be > 0");
  const Mat4& j = symplectic_form();
  return max_abs(transpose(a) * j * a - j) <= tol;
}

SymEigen2 sym_eigen_2x2(const Mat2& m) {
  if (std::abs(m(0, 1) - m(1, 0)) > 1e-12)
    throw ContractViolation("sym_eigen_2x2: input not symmetric");
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double c = m(1, 1);

  SymEigen2 out;
  const double disc = std::hypot(a - c, 2.0 * b);
  out.lambda1 = 0.5 * ((a + c) - disc);
  out.lambda2 = 0.5 * ((a + c) + disc);

  if (b == 0.0) {
    // already diagonal; order columns by eigenvalue
    out.lambda1 = std::min(a, c);
    out.lambda2 = std::max(a, c);
    out.s = (a <= c) ? Mat2::identity() : Mat2{{0.0, 1.0, 1.0, 0.0}};
    return out;
  }

  // eigenvector for lambda2; the component lambda2 - a = (c - a + disc)/2
  // is nonnegative, so (b, lambda2 - a) never cancels
  double v2x = b;
  double v2y = out.lambda2 - a;
  const double n2 = std::hypot(v2x, v2y);
  v2x /= n2;
  v2y /= n2;
  // orthogonal complement for lambda1
  double v1x = -v2y;
  double v1y = v2x;

  // sign convention: first nonzero component of each column positive
  auto fix = [](double& x, double& y) {
    const double lead = (x != 0.0) ? x : y;
    if (lead < 0.0) {
      x = -x;
      y = -y;
    }
  };
  fix(v1x, v1y);
  fix(v2x, v2y);

  out.s = Mat2{{v1x, v2x, v1y, v2y}};
  return out;
}

Qr4 qr_4x4(const Mat4& a) {
  Mat4 r = a;
  Mat4 q = Mat4::identity();

  for (int k = 0; k < 3; ++k) {
    double below = 0.0;
    for (int i = k + 1; i < 4; ++i) below += r(i, k) * r(i, k);
    if (below == 0.0) continue;  // column already upper-triangular

    const double alpha = r(k, k);
    const double norm = std::sqrt(alpha * alpha + below);
    // reflect onto -sign(alpha) * norm * e_k for stability
    double v[4] = {0.0, 0.0, 0.0, 0.0};
    v[k] = alpha + (alpha >= 0.0 ? norm : -norm);
    for (int i = k + 1; i < 4; ++i) v[i] = r(i, k);
    double vtv = 0.0;
    for (int i = k; i < 4; ++i) vtv += v[i] * v[i];
    const double beta = 2.0 / vtv;

    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int i = k; i < 4; ++i) dot += v[i] * r(i, j);
      const double f = beta * dot;
      for (int i = k; i < 4; ++i) r(i, j) -= f * v[i];
    }
    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int i = k; i < 4; ++i) dot += v[i] * q(j, i);
      const double f = beta * dot;
      for (int i = k; i < 4; ++i) q(j, i) -= f * v[i];
    }
    for (int i = k + 1; i < 4; ++i) r(i, k) = 0.0;
  }

  // nonnegative diagonal convention
  for (int i = 0; i < 4; ++i) {
    if (r(i, i) < 0.0) {
      for (int j = 0; j < 4; ++j) {
        r(i, j) = -r(i, j);
        q(j, i) = -q(j, i);
      }
    }
  }
  return {q, r};
}

double op_norm(const Mat4& a) {
  // largest eigenvalue of a^T a via Jacobi; power iteration stalls below the
  // 1e-8 accuracy contract when the two leading singular values cluster
  const Mat4 ata = transpose(a) * a;
  std::array<std::array<double, 4>, 4> m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = ata(i, j);
  const auto eig = detail::jacobi_eigen_sym<4>(m);
  return std::sqrt(std::max(eig.values[0], 0.0));
}

}  // namespace lyacert
