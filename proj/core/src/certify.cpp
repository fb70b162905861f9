#include "lyacert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lyacert/errors.hpp"
#include "parallel.hpp"

namespace lyacert {

const char* to_string(Implication implication) {
  switch (implication) {
    case Implication::kSeparatedPositiveExponents:
      return "SeparatedPositiveExponents";
    case Implication::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// closure + explicit path over four completed log witnesses
void finish_certificate(DensityCertificate& cert,
                        const std::array<LogWitness, 4>& logs,
                        const CertifyConfig& cfg) {
  std::array<Sp2Element, 4> gens;
  for (int i = 0; i < 4; ++i) gens[static_cast<std::size_t>(i)] = logs[static_cast<std::size_t>(i)].la;
  const LieClosure closure = lie_closure_rank(gens, cfg.svd_tol);
  const DeterminantWitnesses path = determinant_witnesses(logs, cfg.svd_tol);

  cert.rank = closure.rank;
  cert.rank_margin = closure.min_kept_sv;
  cert.det_v1 = path.det_v1;
  cert.det_v2 = path.det_v2;
  cert.dets_independent = path.independent;

  bool powers_ok = true;
  for (int i = 0; i < 4; ++i)
    powers_ok = powers_ok && cert.dists[static_cast<std::size_t>(i)] < cert.delta;
  cert.certified = (closure.rank == 10) && powers_ok;
  cert.implication = cert.certified ? Implication::kSeparatedPositiveExponents
                                    : Implication::kInconclusive;
}

}  // namespace

DensityCertificate certify_generators(const GeneratorSet& gen,
                                      const CertifyConfig& cfg) {
  DensityCertificate cert;
  cert.energy = gen.energy;
  cert.delta = cfg.delta;
  cert.big_m = cfg.big_m;

  std::array<LogWitness, 4> logs;
  for (int i = 0; i < 4; ++i) {
    const TransferMatrix& t = gen.mats[static_cast<std::size_t>(i)];
    try {
      const PowerNeighborhood pn =
          power_in_neighborhood(t, cfg.big_m, cfg.delta, cfg.retries);
      cert.hits[static_cast<std::size_t>(i)] = pn.hit;
      cert.dists[static_cast<std::size_t>(i)] = pn.dist;
      logs[static_cast<std::size_t>(i)] = principal_log_power(t, pn.hit);
    } catch (const NeighborhoodMiss& miss) {
      cert.dists[static_cast<std::size_t>(i)] = miss.dist;
      cert.diagnostic = "omega index " + std::to_string(i) + ": " + miss.what();
      return cert;  // uncertified, Inconclusive
    }
  }
  finish_certificate(cert, logs, cfg);
  return cert;
}

DensityCertificate certify_energy(double energy, const CertifyConfig& cfg) {
  // the certificate only uses the four matrices, so any valid p works
  return certify_generators(generator_set(energy, 0.5), cfg);
}

DensityCertificate replay_certificate(double energy,
                                      const std::array<DiophantineHit, 4>& hits,
                                      const CertifyConfig& cfg) {
  DensityCertificate cert;
  cert.energy = energy;
  cert.delta = cfg.delta;
  cert.big_m = cfg.big_m;

  std::array<LogWitness, 4> logs;
  const auto omegas = BernoulliConfig::all();
  for (int i = 0; i < 4; ++i) {
    const TransferMatrix t = transfer_matrix(energy, omegas[static_cast<std::size_t>(i)]);
    const DiophantineHit& hit = hits[static_cast<std::size_t>(i)];
    const Mat4 power = matrix_power(t.a, hit.m);
    cert.hits[static_cast<std::size_t>(i)] = hit;
    cert.dists[static_cast<std::size_t>(i)] = op_norm(power - Mat4::identity());
    logs[static_cast<std::size_t>(i)] = principal_log_power(t, hit);
  }
  finish_certificate(cert, logs, cfg);
  return cert;
}

namespace {

DensityCertificate certify_point(double energy, const CertifyConfig& cfg) {
  try {
    return certify_energy(energy, cfg);
  } catch (const std::exception& e) {
    DensityCertificate cert;
    cert.energy = energy;
    cert.delta = cfg.delta;
    cert.big_m = cfg.big_m;
    cert.diagnostic = e.what();
    return cert;
  }
}

}  // namespace

SweepReport sweep(double e_min, double e_max, int n_grid, const SweepConfig& cfg) {
  if (!(e_min > kMinEnergy) || !(e_min < e_max))
    throw ContractViolation("sweep: need 2 < e_min < e_max");
  if (n_grid < 2) throw ContractViolation("sweep: need n_grid >= 2");

  SweepReport report;
  report.grid.resize(static_cast<std::size_t>(n_grid));
  const double step = (e_max - e_min) / static_cast<double>(n_grid - 1);
  for (int i = 0; i < n_grid; ++i)
    report.grid[static_cast<std::size_t>(i)] = e_min + step * static_cast<double>(i);
  report.grid.back() = e_max;

  report.certificates.resize(static_cast<std::size_t>(n_grid));
  detail::parallel_for_index(n_grid, cfg.jobs, [&](std::int64_t i) {
    report.certificates[static_cast<std::size_t>(i)] =
        certify_point(report.grid[static_cast<std::size_t>(i)], cfg.cert);
  });

  // bracket every maximal run of uncertified grid points by bisecting its
  // certified/uncertified edges, then chase the rank-margin minimum inside
  // the bracket so near-exceptional energies surface too
  auto certified_at = [&](int i) {
    return report.certificates[static_cast<std::size_t>(i)].certified;
  };

  auto observe = [](SuspectedInterval& iv, const DensityCertificate& c) {
    if (!c.certified) iv.min_rank = std::min(iv.min_rank, c.rank);
    if (c.rank_margin < iv.margin_min) {
      iv.margin_min = c.rank_margin;
      iv.margin_at = c.energy;
    }
  };

  auto probe = [&](double e, SuspectedInterval& iv) {
    DensityCertificate c = certify_point(e, cfg.cert);
    observe(iv, c);
    const bool ok = c.certified;
    report.refinements.push_back(std::move(c));
    return ok;
  };

  // bisection with `certified` ends at lo when below = true, at hi otherwise
  auto refine_edge = [&](double cert_e, double uncert_e, bool certified_below,
                         SuspectedInterval& iv) {
    double lo = certified_below ? cert_e : uncert_e;
    double hi = certified_below ? uncert_e : cert_e;
    for (int s = 0; s < cfg.refine_steps; ++s) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const bool ok = probe(mid, iv);
      if (ok == certified_below)
        lo = mid;
      else
        hi = mid;
    }
    return certified_below ? lo : hi;  // the certified end
  };

  // ternary narrowing of the rank-margin minimum inside the bracket
  auto refine_margin = [&](double lo, double hi, SuspectedInterval& iv) {
    for (int s = 0; s < cfg.refine_steps; ++s) {
      const double a = lo + (hi - lo) / 3.0;
      const double b = hi - (hi - lo) / 3.0;
      if (a <= lo || b >= hi || a >= b) break;
      probe(a, iv);
      const double margin_a = report.refinements.back().rank_margin;
      probe(b, iv);
      const double margin_b = report.refinements.back().rank_margin;
      if (margin_a <= margin_b)
        hi = b;
      else
        lo = a;
    }
  };

  for (int i = 0; i < n_grid;) {
    if (certified_at(i)) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n_grid && !certified_at(j + 1)) ++j;

    SuspectedInterval iv;
    iv.min_rank = 10;
    iv.margin_min = std::numeric_limits<double>::infinity();
    for (int k = i; k <= j; ++k)
      observe(iv, report.certificates[static_cast<std::size_t>(k)]);

    iv.e_lo = (i > 0) ? refine_edge(report.grid[static_cast<std::size_t>(i - 1)],
                                    report.grid[static_cast<std::size_t>(i)], true, iv)
                      : e_min;
    iv.e_hi = (j < n_grid - 1)
                  ? refine_edge(report.grid[static_cast<std::size_t>(j + 1)],
                                report.grid[static_cast<std::size_t>(j)], false, iv)
                  : e_max;
    refine_margin(iv.e_lo, iv.e_hi, iv);
    report.suspected.push_back(iv);
    i = j + 1;
  }

  // sampled Lyapunov cross-checks at certified grid points
  if (cfg.lyap_every > 0) {
    int certified_count = 0;
    for (int i = 0; i < n_grid; ++i) {
      if (!certified_at(i)) continue;
      if (certified_count % cfg.lyap_every == 0) {
        const double e = report.grid[static_cast<std::size_t>(i)];
        const RngSeed point_seed{
            cfg.seed.seed,
            cfg.seed.stream + static_cast<std::uint64_t>(i) *
                                  static_cast<std::uint64_t>(cfg.lyap_replicas)};
        LyapunovCheck check;
        check.estimate =
            estimate_spectrum(generator_set(e, cfg.p), cfg.lyap_steps,
                              cfg.lyap_replicas, cfg.lyap_burn_in, point_seed,
                              cfg.jobs);
        check.report = separation_report(check.estimate);
        check.consistent =
            cross_validate(report.certificates[static_cast<std::size_t>(i)], check.estimate)
                .consistent;
        report.lyapunov_checks.push_back(std::move(check));
      }
      ++certified_count;
    }
  }
  return report;
}

CrossValidation cross_validate(const DensityCertificate& cert,
                               const LyapunovEstimate& est) {
  if (cert.energy != est.energy)
    throw ContractViolation("cross_validate: certificate and estimate energies differ");

  CrossValidation cv;
  const SeparationReport rep = separation_report(est);
  cv.consistent = !cert.certified || rep.significant;
  if (!cert.certified)
    cv.detail = "certificate inconclusive; no claim to check";
  else if (rep.significant)
    cv.detail = "certified and Monte-Carlo separation significant";
  else
    cv.detail = "certified but Monte-Carlo separation NOT significant";
  return cv;
}

}  // namespace lyacert
