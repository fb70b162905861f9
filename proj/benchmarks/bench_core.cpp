// Microbenchmarks for the kernels the sweep and Monte-Carlo loops live in.
#include <benchmark/benchmark.h>

#include <cmath>

#include "lyacert/certify.hpp"
#include "lyacert/diophantine.hpp"
#include "lyacert/liealg.hpp"
#include "lyacert/lyapunov.hpp"
#include "lyacert/model.hpp"
#include "lyacert/rng.hpp"

using namespace lyacert;

namespace {

Mat4 seeded_mat4(std::uint64_t seed) {
  SplitMix64 rng({seed, 0});
  Mat4 m;
  for (double& x : m.v) x = 2.0 * rng.next_double() - 1.0;
  return m;
}

void BM_Mat4Multiply(benchmark::State& state) {
  const Mat4 a = seeded_mat4(1);
  Mat4 b = seeded_mat4(2);
  for (auto _ : state) {
    b = a * b;
    benchmark::DoNotOptimize(b.v.data());
  }
}
BENCHMARK(BM_Mat4Multiply);

void BM_Qr4(benchmark::State& state) {
  const Mat4 a = seeded_mat4(3);
  for (auto _ : state) {
    Qr4 qr = qr_4x4(a);
    benchmark::DoNotOptimize(qr.r.v.data());
  }
}
BENCHMARK(BM_Qr4);

void BM_OpNorm(benchmark::State& state) {
  const Mat4 a = seeded_mat4(4);
  for (auto _ : state) {
    double n = op_norm(a);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_OpNorm);

void BM_TransferMatrix(benchmark::State& state) {
  double e = 2.5;
  for (auto _ : state) {
    TransferMatrix t = transfer_matrix(e, {1, 0});
    benchmark::DoNotOptimize(t.a.v.data());
    e = e < 40.0 ? e + 1e-3 : 2.5;
  }
}
BENCHMARK(BM_TransferMatrix);

void BM_Expm(benchmark::State& state) {
  const Mat4 a = 0.05 * seeded_mat4(5);
  for (auto _ : state) {
    Mat4 e = expm(a);
    benchmark::DoNotOptimize(e.v.data());
  }
}
BENCHMARK(BM_Expm);

void BM_DiophantineScan(benchmark::State& state) {
  // fixed window so the per-candidate cost is comparable across runs
  const TransferMatrix t = transfer_matrix(2.77, {0, 0});
  std::int64_t scanned = 0;
  for (auto _ : state) {
    DiophantineHit h = simultaneous_approx(t.r1, t.r2, 100000);
    benchmark::DoNotOptimize(h.m);
    scanned += h.m;  // the scan stops at the first hit
  }
  state.SetItemsProcessed(scanned);
}
BENCHMARK(BM_DiophantineScan);

void BM_LyapunovSteps(benchmark::State& state) {
  const GeneratorSet g = generator_set(3.0, 0.5);
  const std::int64_t steps = state.range(0);
  for (auto _ : state) {
    LyapunovEstimate est = estimate_spectrum(g, steps, 1, 0, {42, 0}, 1);
    benchmark::DoNotOptimize(est.gammas.data());
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_LyapunovSteps)->Arg(1000)->Arg(10000);

void BM_CertifyEnergy(benchmark::State& state) {
  CertifyConfig cfg;
  double e = 2.5;
  for (auto _ : state) {
    DensityCertificate cert = certify_energy(e, cfg);
    benchmark::DoNotOptimize(cert.rank);
    e = e < 19.0 ? e + 0.37 : 2.5;
  }
}
BENCHMARK(BM_CertifyEnergy);

void BM_LieClosure(benchmark::State& state) {
  std::array<LogWitness, 4> logs;
  for (const auto omega : BernoulliConfig::all()) {
    const TransferMatrix t = transfer_matrix(3.0, omega);
    const PowerNeighborhood pn = power_in_neighborhood(t, 1000000, 0.1);
    logs[static_cast<std::size_t>(omega.index())] = principal_log_power(t, pn.hit);
  }
  std::array<Sp2Element, 4> gens;
  for (int i = 0; i < 4; ++i) gens[static_cast<std::size_t>(i)] = logs[static_cast<std::size_t>(i)].la;
  for (auto _ : state) {
    LieClosure c = lie_closure_rank(gens, 1e-7);
    benchmark::DoNotOptimize(c.rank);
  }
}
BENCHMARK(BM_LieClosure);

}  // namespace

BENCHMARK_MAIN();
