// Internal: cyclic Jacobi eigen-decomposition for small symmetric matrices.
// Quadratically convergent and free of the stagnation that plagues power
// iteration when the top eigenvalues cluster.
#pragma once

#include <array>
#include <cmath>

namespace lyacert::detail {

template <int N>
struct JacobiEigen {
  std::array<double, N> values{};                 // sorted descending
  std::array<std::array<double, N>, N> vectors{}; // vectors[k] = k-th eigenvector
};

template <int N>
JacobiEigen<N> jacobi_eigen_sym(std::array<std::array<double, N>, N> a) {
  std::array<std::array<double, N>, N> v{};
  for (int i = 0; i < N; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(a[i][j]));

  if (scale > 0.0) {
    const double stop = 1e-30 * scale * scale;
    for (int sweep = 0; sweep < 64; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < N - 1; ++p)
        for (int q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
      if (off <= stop) break;

      for (int p = 0; p < N - 1; ++p) {
        for (int q = p + 1; q < N; ++q) {
          const double apq = a[p][q];
          if (apq == 0.0) continue;
          const double theta = 0.5 * (a[q][q] - a[p][p]) / apq;
          const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;

          for (int k = 0; k < N; ++k) {
            const double akp = a[k][p];
            const double akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
          }
          for (int k = 0; k < N; ++k) {
            const double apk = a[p][k];
            const double aqk = a[q][k];
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
          }
          a[p][q] = 0.0;
          a[q][p] = 0.0;
          for (int k = 0; k < N; ++k) {
            const double vkp = v[k][p];
            const double vkq = v[k][q];
            v[k][p] = c * vkp - s * vkq;
            v[k][q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  JacobiEigen<N> out;
  std::array<int, N> order{};
  for (int i = 0; i < N; ++i) order[i] = i;
  // stable selection sort by descending eigenvalue keeps ties deterministic
  for (int i = 0; i < N - 1; ++i) {
    int best = i;
    for (int j = i + 1; j < N; ++j)
      if (a[order[j]][order[j]] > a[order[best]][order[best]]) best = j;
    std::swap(order[i], order[best]);
  }
  for (int i = 0; i < N; ++i) {
    const int k = order[i];
    out.values[i] = a[k][k];
    for (int r = 0; r < N; ++r) out.vectors[i][r] = v[r][k];
    // fix sign: first nonzero component positive
    for (int r = 0; r < N; ++r) {
      if (out.vectors[i][r] != 0.0) {
        if (out.vectors[i][r] < 0.0)
          for (int s = 0; s < N; ++s) out.vectors[i][s] = -out.vectors[i][s];
        break;
      }
    }
  }
  return out;
}

}  // namespace lyacert::detail
