// lyacert: certify Zariski density of the transfer-matrix group energy by
// energy, sweep energy windows for the exceptional set, and estimate the
// Lyapunov spectrum by seeded Monte-Carlo.
#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lyacert/certify.hpp"
#include "lyacert/errors.hpp"
#include "lyacert/lyapunov.hpp"
#include "lyacert/version.hpp"
#include "report_io.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;    // operational failure
constexpr int kExitUncertified = 2;  // a finding, not an error
constexpr int kExitUsage = 64;

struct OutputOpts {
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
  std::string run_id;  // empty = derive from config
  int jobs = 0;
};

void add_output_options(CLI::App* cmd, OutputOpts* opts) {
  cmd->add_option("--out", opts->out_dir, "Output directory")
      ->envname("LYACERT_OUTPUT_DIR")
      ->capture_default_str();
  cmd->add_option("--format", opts->formats, "Output formats (csv, json)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--run-id", opts->run_id,
                  "Run identifier (default: hash of the configuration)");
  cmd->add_option("--jobs", opts->jobs, "Worker threads (0 = hardware)")
      ->capture_default_str();
}

bool wants(const OutputOpts& opts, const std::string& fmt) {
  for (const auto& f : opts.formats)
    if (f == fmt) return true;
  return false;
}

std::filesystem::path run_dir(const OutputOpts& opts, const std::string& run_id) {
  return std::filesystem::path(opts.out_dir) / run_id;
}

void emit(const OutputOpts& opts, const lyacert::io::RunMeta& meta,
          const std::string& stem, const lyacert::io::ordered_json& json_doc,
          const std::string& csv_doc) {
  const auto dir = run_dir(opts, meta.run_id);
  if (wants(opts, "json")) {
    const auto path = dir / (stem + ".json");
    lyacert::io::write_file(path, json_doc.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
  }
  if (wants(opts, "csv")) {
    const auto path = dir / (stem + ".csv");
    lyacert::io::write_file(path, csv_doc);
    std::cout << "wrote " << path.string() << "\n";
  }
}

struct CertifyArgs {
  std::vector<double> energies;
  lyacert::CertifyConfig cfg;
  OutputOpts out;
};

int run_certify(const CertifyArgs& args) {
  using namespace lyacert;

  // full validation before any work starts
  for (const double e : args.energies)
    if (!(e > kMinEnergy)) throw EnergyOutOfRange(e);

  io::ordered_json config;
  config["energies"] = args.energies;
  config["big_m"] = args.cfg.big_m;
  config["delta"] = args.cfg.delta;
  config["svd_tol"] = args.cfg.svd_tol;
  config["retries"] = args.cfg.retries;

  io::RunMeta meta;
  meta.command = "certify";
  meta.config = config;
  meta.run_id = args.out.run_id.empty()
                    ? io::derive_run_id(meta.command, config)
                    : args.out.run_id;

  std::vector<DensityCertificate> certs;
  certs.reserve(args.energies.size());
  bool all_certified = true;
  for (const double e : args.energies) {
    DensityCertificate cert = certify_energy(e, args.cfg);
    all_certified = all_certified && cert.certified;
    std::cout << "E = " << e << ": "
              << (cert.certified ? "certified" : "NOT certified") << " (rank "
              << cert.rank << ", margin " << cert.rank_margin << ")";
    if (!cert.diagnostic.empty()) std::cout << " [" << cert.diagnostic << "]";
    std::cout << "\n";
    certs.push_back(std::move(cert));
  }

  emit(args.out, meta, "certificates", io::certify_report_json(meta, certs),
       io::certify_report_csv(meta, certs));
  return all_certified ? kExitOk : kExitUncertified;
}

struct SweepArgs {
  double e_min = 2.1;
  double e_max = 20.0;
  int n_grid = 512;
  lyacert::SweepConfig cfg;
  OutputOpts out;
};

int run_sweep(SweepArgs& args) {
  using namespace lyacert;

  io::ordered_json config;
  config["e_min"] = args.e_min;
  config["e_max"] = args.e_max;
  config["n_grid"] = args.n_grid;
  config["big_m"] = args.cfg.cert.big_m;
  config["delta"] = args.cfg.cert.delta;
  config["svd_tol"] = args.cfg.cert.svd_tol;
  config["retries"] = args.cfg.cert.retries;
  config["p"] = args.cfg.p;
  config["refine_steps"] = args.cfg.refine_steps;
  config["lyap_every"] = args.cfg.lyap_every;
  config["lyap_steps"] = args.cfg.lyap_steps;
  config["lyap_replicas"] = args.cfg.lyap_replicas;
  config["lyap_burn_in"] = args.cfg.lyap_burn_in;
  config["seed"] = args.cfg.seed.seed;
  config["stream"] = args.cfg.seed.stream;

  io::RunMeta meta;
  meta.command = "sweep";
  meta.config = config;
  meta.run_id = args.out.run_id.empty()
                    ? io::derive_run_id(meta.command, config)
                    : args.out.run_id;

  args.cfg.jobs = args.out.jobs;
  const SweepReport report = sweep(args.e_min, args.e_max, args.n_grid, args.cfg);

  int certified = 0;
  for (const auto& c : report.certificates) certified += c.certified ? 1 : 0;
  std::cout << "certified " << certified << "/" << args.n_grid << " grid points, "
            << report.suspected.size() << " suspected interval(s), "
            << report.refinements.size() << " refinement probe(s)\n";
  for (const auto& s : report.suspected)
    std::cout << "  suspected exceptional in (" << s.e_lo << ", " << s.e_hi
              << "), min rank " << s.min_rank << "\n";
  for (const auto& c : report.lyapunov_checks)
    std::cout << "  lyapunov check at E = " << c.estimate.energy
              << ": gap12 = " << c.report.gap12
              << (c.consistent ? " (consistent)" : " (INCONSISTENT)") << "\n";

  emit(args.out, meta, "sweep", io::sweep_report_json(meta, report),
       io::sweep_report_csv(meta, report));
  return certified == args.n_grid ? kExitOk : kExitUncertified;
}

struct LyapunovArgs {
  double energy = 3.0;
  double p = 0.5;
  std::int64_t steps = 1000000;
  int replicas = 16;
  std::int64_t burn_in = 1000;
  lyacert::RngSeed seed;
  OutputOpts out;
};

int run_lyapunov(const LyapunovArgs& args) {
  using namespace lyacert;

  io::ordered_json config;
  config["energy"] = args.energy;
  config["p"] = args.p;
  config["n_steps"] = args.steps;
  config["n_replicas"] = args.replicas;
  config["burn_in"] = args.burn_in;
  config["seed"] = args.seed.seed;
  config["stream"] = args.seed.stream;

  io::RunMeta meta;
  meta.command = "lyapunov";
  meta.config = config;
  meta.run_id = args.out.run_id.empty()
                    ? io::derive_run_id(meta.command, config)
                    : args.out.run_id;

  const LyapunovEstimate est =
      estimate_spectrum(generator_set(args.energy, args.p), args.steps,
                        args.replicas, args.burn_in, args.seed, args.out.jobs);
  const auto [d14, d23] = symmetry_defect(est);
  const SeparationReport rep = separation_report(est);

  std::cout << "E = " << est.energy << ": gammas =";
  for (const double g : est.gammas) std::cout << " " << g;
  std::cout << "\n  gap12 = " << rep.gap12 << ", gamma2 = " << rep.positivity_margin
            << ", significant = " << (rep.significant ? "yes" : "no")
            << "\n  symmetry defects = " << d14 << ", " << d23 << "\n";

  emit(args.out, meta, "lyapunov", io::lyapunov_report_json(meta, est),
       io::lyapunov_report_csv(meta, est));
  return kExitOk;
}

int run_selftest(bool as_json, bool corrupt) {
  const auto results = lyacert::selftest::run_all(corrupt ? 1e-30 : 1.0);
  bool all_pass = true;
  if (as_json) {
    lyacert::io::ordered_json arr = lyacert::io::ordered_json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      all_pass = all_pass && r.pass;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << " (" << r.detail
                << ")\n";
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Transfer-matrix density certificates and Lyapunov spectra for "
               "the two-channel Bernoulli model"};
  app.set_version_flag("--version", lyacert::kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  // flat key = value entries under a [subcommand] section
  app.set_config("--config", "", "Configuration file ([subcommand] sections, key = value)");

  // certify
  CertifyArgs certify_args;
  CLI::App* certify = app.add_subcommand(
      "certify", "Certify density of the transfer-matrix group at given energies");
  certify->add_option("--energy", certify_args.energies, "Energy (repeatable)")
      ->required();
  certify->add_option("--bigm", certify_args.cfg.big_m, "Diophantine search window")
      ->capture_default_str();
  certify->add_option("--delta", certify_args.cfg.delta,
                      "Identity-neighborhood radius (operator norm)")
      ->capture_default_str();
  certify->add_option("--svd-tol", certify_args.cfg.svd_tol,
                      "Relative rank threshold")
      ->capture_default_str();
  certify->add_option("--retries", certify_args.cfg.retries,
                      "Window enlargements before giving up")
      ->capture_default_str();
  add_output_options(certify, &certify_args.out);

  // sweep
  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Certify an energy grid and bracket the exceptional set");
  sweep_cmd->add_option("--emin", sweep_args.e_min, "Grid start")->required();
  sweep_cmd->add_option("--emax", sweep_args.e_max, "Grid end")->required();
  sweep_cmd->add_option("--grid", sweep_args.n_grid, "Grid points")
      ->capture_default_str();
  sweep_cmd->add_option("--bigm", sweep_args.cfg.cert.big_m, "Diophantine search window")
      ->capture_default_str();
  sweep_cmd->add_option("--delta", sweep_args.cfg.cert.delta,
                        "Identity-neighborhood radius (operator norm)")
      ->capture_default_str();
  sweep_cmd->add_option("--svd-tol", sweep_args.cfg.cert.svd_tol,
                        "Relative rank threshold")
      ->capture_default_str();
  sweep_cmd->add_option("--retries", sweep_args.cfg.cert.retries,
                        "Window enlargements before giving up")
      ->capture_default_str();
  sweep_cmd->add_option("--p", sweep_args.cfg.p, "Bernoulli parameter")
      ->capture_default_str();
  sweep_cmd->add_option("--refine-steps", sweep_args.cfg.refine_steps,
                        "Bisection steps per cluster edge")
      ->capture_default_str();
  sweep_cmd->add_option("--lyap-every", sweep_args.cfg.lyap_every,
                        "Lyapunov cross-check every k-th certified point (0 = off)")
      ->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_args.cfg.lyap_steps,
                        "Monte-Carlo steps per cross-check replica")
      ->capture_default_str();
  sweep_cmd->add_option("--replicas", sweep_args.cfg.lyap_replicas,
                        "Cross-check replicas")
      ->capture_default_str();
  sweep_cmd->add_option("--burnin", sweep_args.cfg.lyap_burn_in,
                        "Cross-check burn-in steps")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_args.cfg.seed.seed, "RNG seed")
      ->capture_default_str();
  sweep_cmd->add_option("--stream", sweep_args.cfg.seed.stream, "RNG stream id")
      ->capture_default_str();
  add_output_options(sweep_cmd, &sweep_args.out);

  // lyapunov
  LyapunovArgs lyap_args;
  CLI::App* lyap = app.add_subcommand(
      "lyapunov", "Estimate the Lyapunov spectrum by seeded Monte-Carlo");
  lyap->add_option("--energy", lyap_args.energy, "Energy")->required();
  lyap->add_option("--p", lyap_args.p, "Bernoulli parameter")->capture_default_str();
  lyap->add_option("--steps", lyap_args.steps, "Steps per replica")
      ->capture_default_str();
  lyap->add_option("--replicas", lyap_args.replicas, "Independent replicas")
      ->capture_default_str();
  lyap->add_option("--burnin", lyap_args.burn_in, "Burn-in steps")
      ->capture_default_str();
  lyap->add_option("--seed", lyap_args.seed.seed, "RNG seed")->capture_default_str();
  lyap->add_option("--stream", lyap_args.seed.stream, "RNG stream id")
      ->capture_default_str();
  add_output_options(lyap, &lyap_args.out);

  // selftest
  bool selftest_json = false;
  bool selftest_corrupt = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_flag("--json", selftest_json, "Machine-readable output");
  selftest->add_flag("--corrupt-tolerances", selftest_corrupt,
                     "Test hook: shrink tolerances to force failures")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // structural validation beyond flag syntax; domain errors (energy range)
  // are left to the modules and reported as operational failures
  auto usage_error = [](const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
  };

  try {
    if (certify->parsed()) {
      if (certify_args.cfg.big_m < 4) return usage_error("--bigm must be >= 4");
      if (!(certify_args.cfg.delta > 0.0)) return usage_error("--delta must be > 0");
      if (!(certify_args.cfg.svd_tol > 0.0))
        return usage_error("--svd-tol must be > 0");
      if (certify_args.cfg.retries < 0) return usage_error("--retries must be >= 0");
      return run_certify(certify_args);
    }
    if (sweep_cmd->parsed()) {
      if (!(sweep_args.e_min < sweep_args.e_max))
        return usage_error("--emin must be smaller than --emax");
      if (sweep_args.n_grid < 2) return usage_error("--grid must be >= 2");
      if (sweep_args.cfg.cert.big_m < 4) return usage_error("--bigm must be >= 4");
      if (!(sweep_args.cfg.cert.delta > 0.0))
        return usage_error("--delta must be > 0");
      if (!(sweep_args.cfg.cert.svd_tol > 0.0))
        return usage_error("--svd-tol must be > 0");
      if (sweep_args.cfg.cert.retries < 0)
        return usage_error("--retries must be >= 0");
      if (!(sweep_args.cfg.p > 0.0 && sweep_args.cfg.p < 1.0))
        return usage_error("--p must lie in (0, 1)");
      if (sweep_args.cfg.refine_steps < 0)
        return usage_error("--refine-steps must be >= 0");
      if (sweep_args.cfg.lyap_every > 0) {
        if (sweep_args.cfg.lyap_replicas < 1)
          return usage_error("--replicas must be >= 1");
        if (sweep_args.cfg.lyap_burn_in < 0 ||
            sweep_args.cfg.lyap_steps < 10 * sweep_args.cfg.lyap_burn_in ||
            sweep_args.cfg.lyap_steps < 1)
          return usage_error("--steps must be >= max(1, 10*burnin)");
      }
      return run_sweep(sweep_args);
    }
    if (lyap->parsed()) {
      if (lyap_args.replicas < 1) return usage_error("--replicas must be >= 1");
      if (lyap_args.burn_in < 0 || lyap_args.steps < 10 * lyap_args.burn_in ||
          lyap_args.steps < 1)
        return usage_error("--steps must be >= max(1, 10*burnin)");
      if (!(lyap_args.p > 0.0 && lyap_args.p < 1.0))
        return usage_error("--p must lie in (0, 1)");
      return run_lyapunov(lyap_args);
    }
    if (selftest->parsed()) return run_selftest(selftest_json, selftest_corrupt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
