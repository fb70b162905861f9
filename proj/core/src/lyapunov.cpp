#include "lyacert/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lyacert/errors.hpp"
#include "lyacert/smallmat.hpp"
#include "parallel.hpp"

namespace lyacert {

namespace {

std::array<double, 4> run_replica(const GeneratorSet& gen, std::int64_t n_steps,
                                  std::int64_t burn_in, RngSeed seed) {
  SplitMix64 rng(seed);
  Mat4 q = Mat4::identity();
  std::array<double, 4> acc{};

  for (std::int64_t n = 1; n <= n_steps; ++n) {
    const int k = sample_config(gen.weights, rng.next_double());
    const Qr4 qr = qr_4x4(gen.mats[static_cast<std::size_t>(k)].a * q);
    q = qr.q;
    for (int i = 0; i < 4; ++i) {
      const double d = qr.r(i, i);
      if (!(d > 0.0)) throw DegenerateFrame(n);
      if (n > burn_in) acc[static_cast<std::size_t>(i)] += std::log(d);
    }
  }

  const double span = static_cast<double>(n_steps - burn_in);
  for (double& a : acc) a /= span;
  return acc;
}

}  // namespace

LyapunovEstimate estimate_spectrum(const GeneratorSet& gen, std::int64_t n_steps,
                                   int n_replicas, std::int64_t burn_in,
                                   RngSeed seed, int jobs) {
  if (burn_in < 0 || n_steps < 10 * burn_in)
    throw ContractViolation("estimate_spectrum: need n_steps >= 10*burn_in >= 0");
  if (n_steps < 1)
    throw ContractViolation("estimate_spectrum: need n_steps >= 1");
  if (n_replicas < 1)
    throw ContractViolation("estimate_spectrum: need n_replicas >= 1");

  std::vector<std::array<double, 4>> replica(static_cast<std::size_t>(n_replicas));
  detail::parallel_for_index(n_replicas, jobs, [&](std::int64_t r) {
    replica[static_cast<std::size_t>(r)] = run_replica(
        gen, n_steps, burn_in,
        RngSeed{seed.seed, seed.stream + static_cast<std::uint64_t>(r)});
  });

  std::array<double, 4> mean{};
  std::array<double, 4> se{};
  for (int i = 0; i < 4; ++i) {
    double m = 0.0;
    for (const auto& g : replica) m += g[static_cast<std::size_t>(i)];
    m /= static_cast<double>(n_replicas);
    mean[static_cast<std::size_t>(i)] = m;
    if (n_replicas > 1) {
      double var = 0.0;
      for (const auto& g : replica) {
        const double d = g[static_cast<std::size_t>(i)] - m;
        var += d * d;
      }
      var /= static_cast<double>(n_replicas - 1);
      se[static_cast<std::size_t>(i)] =
          std::sqrt(var / static_cast<double>(n_replicas));
    }
  }

  // sort channels by mean, descending, keeping stderr pairing
  std::array<int, 4> order = {0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mean[static_cast<std::size_t>(a)] > mean[static_cast<std::size_t>(b)]; });

  LyapunovEstimate est;
  est.energy = gen.energy;
  for (int i = 0; i < 4; ++i) {
    est.gammas[static_cast<std::size_t>(i)] = mean[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    est.stderrs[static_cast<std::size_t>(i)] = se[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
  }
  est.n_steps = n_steps;
  est.n_replicas = n_replicas;
  est.burn_in = burn_in;
  est.seed = seed;
  return est;
}

std::pair<double, double> symmetry_defect(const LyapunovEstimate& est) {
  return {std::abs(est.gammas[0] + est.gammas[3]),
          std::abs(est.gammas[1] + est.gammas[2])};
}

SeparationReport separation_report(const LyapunovEstimate& est) {
  SeparationReport r;
  r.gap12 = est.gammas[0] - est.gammas[1];
  r.positivity_margin = est.gammas[1];
  r.significant = r.gap12 > 3.0 * (est.stderrs[0] + est.stderrs[1]) &&
                  est.gammas[1] > 3.0 * est.stderrs[1];
  return r;
}

}  // namespace lyacert
