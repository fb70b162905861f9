#include "lyacert/liealg.hpp"

#include <cmath>
#include <vector>

#include "lyacert/errors.hpp"
#include "jacobi_sym.hpp"

namespace lyacert {

namespace {

constexpr double kMembershipTol = 1e-9;
constexpr double kRoundtripTol = 1e-8;

std::array<double, 10> extract_coords(const Mat4& z) {
  return {z(0, 0), z(0, 1), z(1, 0), z(1, 1),
          z(0, 2), z(1, 3), 0.5 * (z(0, 3) + z(1, 2)),
          z(2, 0), z(3, 1), 0.5 * (z(2, 1) + z(3, 0))};
}

Mat4 build_from_coords(const std::array<double, 10>& c) {
  Mat4 z;
  z(0, 0) = c[0];
  z(0, 1) = c[1];
  z(1, 0) = c[2];
  z(1, 1) = c[3];
  z(0, 2) = c[4];
  z(1, 3) = c[5];
  z(0, 3) = c[6];
  z(1, 2) = c[6];
  z(2, 0) = c[7];
  z(3, 1) = c[8];
  z(2, 1) = c[9];
  z(3, 0) = c[9];
  // lower-right block is -A^T
  z(2, 2) = -c[0];
  z(2, 3) = -c[2];
  z(3, 2) = -c[1];
  z(3, 3) = -c[3];
  return z;
}

double norm10(const std::array<double, 10>& c) {
  double s = 0.0;
  for (double x : c) s += x * x;
  return std::sqrt(s);
}

// Orthonormal basis of the row span of `rows` (each a 10-vector), via the
// eigen-decomposition of the 10x10 Gram matrix. Returns the kept right
// singular vectors and the smallest kept singular value relative to the
// largest.
struct SpanBasis {
  std::vector<std::array<double, 10>> basis;
  double min_kept_rel = 0.0;
};

SpanBasis independent_span(const std::vector<std::array<double, 10>>& rows,
                           double svd_tol) {
  std::array<std::array<double, 10>, 10> gram{};
  for (const auto& r : rows)
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) gram[i][j] += r[i] * r[j];

  const auto eig = detail::jacobi_eigen_sym<10>(gram);
  const double smax = std::sqrt(std::max(eig.values[0], 0.0));

  SpanBasis out;
  if (smax == 0.0) return out;
  for (int k = 0; k < 10; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    if (s > svd_tol * smax) {
      std::array<double, 10> v{};
      for (int i = 0; i < 10; ++i) v[i] = eig.vectors[k][i];
      out.basis.push_back(v);
      out.min_kept_rel = s / smax;
    }
  }
  return out;
}

// determinant of a k x k matrix (k <= 6) by Gaussian elimination with
// partial pivoting
double small_det(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return d;
}

// |det| > tol * prod(column norms): a scale-free independence test. A zero
// column makes the family dependent outright.
bool hadamard_independent(const std::vector<std::vector<double>>& cols,
                          double det_value, double tol) {
  double prod = 1.0;
  for (const auto& c : cols) {
    double s = 0.0;
    for (double x : c) s += x * x;
    prod *= std::sqrt(s);
  }
  return prod > 0.0 && std::abs(det_value) > tol * prod;
}

Sp2Element v1_element(double a, double b, double c, double d) {
  return sp2_from_coords({a, b, c, d, 0, 0, 0, 0, 0, 0});
}

std::array<double, 6> v2_coords(const Sp2Element& e) {
  return {e.coords[4], e.coords[5], e.coords[6],
          e.coords[7], e.coords[8], e.coords[9]};
}

}  // namespace

Sp2Element sp2_from_matrix(const Mat4& z) {
  const Mat4& j = symplectic_form();
  if (max_abs(transpose(z) * j + j * z) > kMembershipTol)
    throw ContractViolation("sp2_from_matrix: not in sp2(R)");
  return Sp2Element{z, extract_coords(z)};
}

Sp2Element sp2_from_coords(const std::array<double, 10>& coords) {
  return Sp2Element{build_from_coords(coords), coords};
}

const std::array<Sp2Element, 10>& sp2_basis() {
  static const std::array<Sp2Element, 10> basis = [] {
    std::array<Sp2Element, 10> b;
    for (int i = 0; i < 10; ++i) {
      std::array<double, 10> c{};
      c[static_cast<std::size_t>(i)] = 1.0;
      b[static_cast<std::size_t>(i)] = sp2_from_coords(c);
    }
    return b;
  }();
  return basis;
}

Sp2Element bracket(const Sp2Element& x, const Sp2Element& y) {
  return sp2_from_matrix(x.z * y.z - y.z * x.z);
}

Mat4 expm(const Mat4& a) {
  // scaling and squaring with the diagonal Pade(6) approximant
  const double norm = max_abs(a);
  int squarings = 0;
  Mat4 scaled = a;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    scaled = std::ldexp(1.0, -squarings) * a;
  }

  const int q = 6;
  Mat4 x = scaled;
  double c = 0.5;
  Mat4 num = Mat4::identity() + c * scaled;
  Mat4 den = Mat4::identity() - c * scaled;
  int sign = 1;  // denominator term signs are (-1)^k
  for (int k = 2; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    x = scaled * x;
    num = num + c * x;
    den = (sign > 0) ? den + c * x : den - c * x;
    sign = -sign;
  }
  Mat4 e = inverse(den) * num;
  for (int k = 0; k < squarings; ++k) e = e * e;
  return e;
}

LogWitness principal_log_power(const TransferMatrix& a, const DiophantineHit& hit) {
  const PotentialEigen pe = potential_eigen(a.omega);

  // wrapped angles theta_i = m*r_i - 2*pi*x_i
  const double theta1 = hit.err1;
  const double theta2 = hit.err2;

  Mat4 l;
  l(0, 2) = theta1 / a.r1;
  l(1, 3) = theta2 / a.r2;
  l(2, 0) = -theta1 * a.r1;
  l(3, 1) = -theta2 * a.r2;
  const Mat4 sb = block_diag(pe.s, pe.s);
  const Mat4 la = sb * l * transpose(sb);

  const Mat4 power = matrix_power(a.a, hit.m);
  const double err = max_abs(expm(la) - power);
  if (err > kRoundtripTol) throw RoundtripFailure(err);

  LogWitness w;
  w.omega = a.omega;
  w.hit = hit;
  w.la = sp2_from_matrix(la);
  w.roundtrip_err = err;
  return w;
}

LieClosure lie_closure_rank(std::span<const Sp2Element> gens, double svd_tol) {
  if (gens.empty() || gens.size() > 64)
    throw ContractViolation("lie_closure_rank: need 1..64 generators");
  if (!(svd_tol > 0.0))
    throw ContractViolation("lie_closure_rank: svd_tol must be > 0");

  std::vector<std::array<double, 10>> rows;
  for (const Sp2Element& g : gens) {
    const double n = norm10(g.coords);
    if (n == 0.0) continue;
    std::array<double, 10> c = g.coords;
    for (double& x : c) x /= n;
    rows.push_back(c);
  }

  LieClosure out;
  if (rows.empty()) return out;  // all generators zero

  SpanBasis span = independent_span(rows, svd_tol);
  out.rank = static_cast<int>(span.basis.size());
  out.min_kept_sv = span.min_kept_rel;

  while (out.rank < 10) {
    std::vector<Sp2Element> elems;
    elems.reserve(span.basis.size());
    for (const auto& c : span.basis) elems.push_back(sp2_from_coords(c));

    std::vector<std::array<double, 10>> cand = span.basis;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        cand.push_back(bracket(elems[i], elems[j]).coords);

    SpanBasis next = independent_span(cand, svd_tol);
    const int new_rank = static_cast<int>(next.basis.size());
    out.min_kept_sv = next.min_kept_rel;
    if (new_rank == out.rank) break;  // closed under brackets
    span = std::move(next);
    out.rank = new_rank;
    ++out.depth;
  }
  return out;
}

DeterminantWitnesses determinant_witnesses(const std::array<LogWitness, 4>& logs,
                                           double svd_tol) {
  if (!(svd_tol > 0.0))
    throw ContractViolation("determinant_witnesses: svd_tol must be > 0");

  const auto& la00 = logs[BernoulliConfig{0, 0}.index()].la;
  const auto& la10 = logs[BernoulliConfig{1, 0}.index()].la;
  const auto& la01 = logs[BernoulliConfig{0, 1}.index()].la;
  const auto& la11 = logs[BernoulliConfig{1, 1}.index()].la;

  // V1 family: the four brackets, upper-left 2x2 blocks as columns
  const std::array<Sp2Element, 4> v1_family = {
      bracket(la10, la00), bracket(la01, la00),
      bracket(la10, la11), bracket(la01, la11)};

  std::vector<std::vector<double>> cols1;
  for (const auto& e : v1_family)
    cols1.push_back({e.coords[0], e.coords[1], e.coords[2], e.coords[3]});
  std::vector<std::vector<double>> m1(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m1[i][j] = cols1[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

  DeterminantWitnesses out;
  out.det_v1 = small_det(m1);

  // V2 family: three differences of logs and their brackets with Z1, Z2, Z3
  const Sp2Element z1 = v1_element(1, 0, 0, 0);
  const Sp2Element z2 = v1_element(0, 0, 0, 1);
  const Sp2Element z3 = v1_element(1, 1, 1, 1);

  const Sp2Element d1 = sp2_from_matrix(la10.z - la00.z);
  const Sp2Element d2 = sp2_from_matrix(la10.z - la11.z);
  const Sp2Element d3 = sp2_from_matrix(la01.z - la00.z);

  const std::array<Sp2Element, 6> v2_family = {
      d1, d2, d3, bracket(d1, z1), bracket(d2, z2), bracket(d3, z3)};

  std::vector<std::vector<double>> cols2;
  for (const auto& e : v2_family) {
    const auto c = v2_coords(e);
    cols2.push_back(std::vector<double>(c.begin(), c.end()));
  }
  std::vector<std::vector<double>> m2(6, std::vector<double>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m2[i][j] = cols2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  out.det_v2 = small_det(m2);

  out.independent = hadamard_independent(cols1, out.det_v1, svd_tol) &&
                    hadamard_independent(cols2, out.det_v2, svd_tol);
  return out;
}

}  // namespace lyacert
