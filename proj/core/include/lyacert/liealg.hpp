// The sp2(R) engine: fixed basis and coordinates for the 10-dimensional Lie
// algebra of Sp2(R), closed-form principal logarithms of near-identity
// transfer-matrix powers, Lie brackets, generic bracket-closure rank, and the
// explicit V1/V2 determinant witnesses.
#pragma once

#include <array>
#include <span>

#include "lyacert/diophantine.hpp"
#include "lyacert/model.hpp"
#include "lyacert/smallmat.hpp"

namespace lyacert {

// Element of sp2(R) = { z : z^T J + J z = 0 } together with its coordinates
// in the fixed basis below. Block form z = [[A, C], [B, -A^T]] with B, C
// symmetric; coordinates are
//   (a11, a12, a21, a22, c11, c22, c12, b11, b22, b12).
struct Sp2Element {
  Mat4 z;
  std::array<double, 10> coords{};
};

// Validates membership (||z^T J + J z||_max <= 1e-9) and extracts
// coordinates, symmetrizing roundoff-level asymmetry in the B and C blocks.
Sp2Element sp2_from_matrix(const Mat4& z);

// Exact reconstruction from coordinates.
Sp2Element sp2_from_coords(const std::array<double, 10>& coords);

// The fixed basis: four V1 elements (A over the matrix units E11, E12, E21,
// E22) followed by six V2 elements (C then B over {E11, E22, E12+E21}).
const std::array<Sp2Element, 10>& sp2_basis();

// [x, y] = xy - yx
Sp2Element bracket(const Sp2Element& x, const Sp2Element& y);

// Matrix exponential by scaling-and-squaring with a diagonal Pade
// approximant; accurate well past 1e-12 for the norms seen here.
Mat4 expm(const Mat4& a);

struct LogWitness {
  BernoulliConfig omega;
  DiophantineHit hit;
  Sp2Element la;               // principal log of a^m
  double roundtrip_err = 0.0;  // ||expm(la) - a^m||_max
};

// Closed-form principal logarithm of a^m for a Diophantine hit on a's
// (r1, r2): per channel i the log block is theta_i * [[0, 1/r_i], [-r_i, 0]]
// with theta_i = m*r_i - 2*pi*x_i, conjugated back by the potential's
// orthogonal frame. The binding contract is the verified roundtrip
// expm(la) = a^m within 1e-8; beyond that a RoundtripFailure is thrown.
LogWitness principal_log_power(const TransferMatrix& a, const DiophantineHit& hit);

struct LieClosure {
  int rank = 0;           // dimension of the generated Lie algebra, <= 10
  double min_kept_sv = 0.0;  // smallest retained singular value (relative)
  int depth = 0;          // bracket rounds that strictly increased the rank
};

// Iteratively closes span(gens) under brackets, deciding rank by singular
// value thresholding of the coordinate matrix at svd_tol relative to the
// largest singular value. Generators are normalized to unit coordinate norm
// first, which leaves the generated algebra unchanged.
LieClosure lie_closure_rank(std::span<const Sp2Element> gens, double svd_tol);

struct DeterminantWitnesses {
  double det_v1 = 0.0;  // 4x4 determinant of the V1 bracket family
  double det_v2 = 0.0;  // 6x6 determinant of the V2 family
  bool independent = false;
};

// The explicit certificate: four brackets of the logs spanning V1 (their
// upper-left 2x2 blocks as columns), then the six-element V2 family built
// from differences of logs and their brackets with Z1, Z2, Z3. Families are
// declared independent when each determinant exceeds svd_tol times its
// Hadamard bound (the product of column norms), making the test scale-free.
DeterminantWitnesses determinant_witnesses(const std::array<LogWitness, 4>& logs,
                                           double svd_tol = 1e-7);

}  // namespace lyacert
