// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria 5 and 9 drive the CLI binary and the golden
// fixture directory passed on the command line.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lyacert/certify.hpp"
#include "lyacert/errors.hpp"
#include "lyacert/liealg.hpp"
#include "lyacert/lyapunov.hpp"
#include "lyacert/rng.hpp"
#include "report_io.hpp"

using namespace lyacert;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Options {
  std::string cli;
  fs::path golden;
  int only = 0;  // 0 = all
  int jobs = 0;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::vector<double> grid_2_to_20() {
  std::vector<double> grid;
  for (int k = 1; k <= 100; ++k)
    grid.push_back(2.0 + 18.0 * static_cast<double>(k) / 100.0);
  return grid;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

// 1. symplecticity suite: 1000 seeded (e, omega) pairs in (2, 50]
Outcome criterion1(const Options&) {
  const auto start = Clock::now();
  SplitMix64 rng({1000, 0});
  const Mat4& j = symplectic_form();
  double worst_sym = 0.0;
  double worst_det = 0.0;
  for (int i = 0; i < 250; ++i) {
    const double e = 2.0 + 1e-9 + 48.0 * rng.next_double();
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      worst_sym = std::max(worst_sym, max_abs(transpose(t.a) * j * t.a - j));
      worst_det = std::max(worst_det, std::abs(det(t.a) - 1.0));
    }
  }
  const double secs = seconds_since(start);
  const bool pass = worst_sym < 1e-10 && worst_det < 1e-8 && secs < 1.0;
  return {pass, fmt("worst |AtJA-J| %.2e (<1e-10), worst |det-1| %.2e (<1e-8), %.2fs (<1s)",
                    worst_sym, worst_det, secs)};
}

// 2. diophantine contract on the 100-point grid with big_m = 1e6
Outcome criterion2(const Options&) {
  const auto start = Clock::now();
  const double err_cap = kTwoPi * 1e-3;
  double worst_err = 0.0;
  double worst_dist = 0.0;
  for (const double e : grid_2_to_20()) {
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      const DiophantineHit h = simultaneous_approx(t.r1, t.r2, 1000000);
      worst_err = std::max({worst_err, std::abs(h.err1), std::abs(h.err2)});
      const double dist = op_norm(matrix_power(t.a, h.m) - Mat4::identity());
      worst_dist = std::max(worst_dist, dist);
    }
  }
  const double secs = seconds_since(start);
  const bool pass = worst_err < err_cap && worst_dist < 0.1 && secs < 120.0;
  return {pass, fmt("worst |err| %.3e (<%.3e), worst dist %.4f (<0.1), %.1fs (<120s)",
                    worst_err, err_cap, worst_dist, secs)};
}

// 3. logarithm roundtrip on the same grid
Outcome criterion3(const Options&) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const double e : grid_2_to_20()) {
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      const DiophantineHit h = simultaneous_approx(t.r1, t.r2, 1000000);
      const LogWitness w = principal_log_power(t, h);
      worst = std::max(worst, w.roundtrip_err);
    }
  }
  const double secs = seconds_since(start);
  const bool pass = worst < 1e-8 && secs < 60.0;
  return {pass, fmt("worst roundtrip %.2e (<1e-8), %.1fs (<60s)", worst, secs)};
}

// 4. lie closure at E = 3 plus path agreement on the grid
Outcome criterion4(const Options&) {
  const double svd_tol = 1e-7;
  auto logs_at = [&](double e) {
    std::array<LogWitness, 4> logs;
    for (const auto omega : BernoulliConfig::all()) {
      const TransferMatrix t = transfer_matrix(e, omega);
      const DiophantineHit h = simultaneous_approx(t.r1, t.r2, 1000000);
      logs[static_cast<std::size_t>(omega.index())] = principal_log_power(t, h);
    }
    return logs;
  };
  auto closure_of = [&](const std::array<LogWitness, 4>& logs) {
    std::array<Sp2Element, 4> gens;
    for (int i = 0; i < 4; ++i) gens[static_cast<std::size_t>(i)] = logs[static_cast<std::size_t>(i)].la;
    return lie_closure_rank(gens, svd_tol);
  };

  const auto logs3 = logs_at(3.0);
  const LieClosure c3 = closure_of(logs3);
  const DeterminantWitnesses p3 = determinant_witnesses(logs3, svd_tol);
  bool pass = c3.rank == 10 && p3.independent;

  int implications_checked = 0;
  for (const double e : grid_2_to_20()) {
    const auto logs = logs_at(e);
    const DeterminantWitnesses p = determinant_witnesses(logs, svd_tol);
    if (p.independent) {
      ++implications_checked;
      if (closure_of(logs).rank != 10) pass = false;
    }
  }
  return {pass, fmt("E=3 rank %d (=10), independent %s; independent => rank 10 on "
                    "%d/100 grid energies",
                    c3.rank, p3.independent ? "yes" : "no", implications_checked)};
}

// 5. sweep discreteness proxy with golden fixture
Outcome criterion5(const Options& opt) {
  const auto start = Clock::now();
  SweepConfig cfg;
  cfg.lyap_every = 0;
  cfg.jobs = opt.jobs;
  const double e_min = 2.1;
  const double e_max = 20.0;
  const int n_grid = 512;
  const SweepReport report = sweep(e_min, e_max, n_grid, cfg);

  int certified = 0;
  for (const auto& c : report.certificates) certified += c.certified ? 1 : 0;
  const double frac = static_cast<double>(certified) / n_grid;

  const double cell = (e_max - e_min) / static_cast<double>(n_grid - 1);
  bool intervals_ok = true;
  for (const auto& iv : report.suspected)
    intervals_ok = intervals_ok && (iv.e_hi - iv.e_lo) <= 2.0 * cell;

  // golden fixture: record on first blessed run, compare afterwards
  io::RunMeta meta;
  meta.command = "sweep";
  meta.run_id = "golden";
  meta.config = io::ordered_json{{"e_min", e_min}, {"e_max", e_max},
                                 {"n_grid", n_grid}, {"big_m", cfg.cert.big_m},
                                 {"delta", cfg.cert.delta},
                                 {"svd_tol", cfg.cert.svd_tol}};
  const std::string table = io::sweep_report_csv(meta, report);
  const fs::path golden_file = opt.golden / "sweep_2.1_20_512.csv";
  std::string golden_note;
  bool golden_ok = true;
  if (!fs::exists(golden_file)) {
    io::write_file(golden_file, table);
    golden_note = "golden fixture recorded";
  } else {
    golden_ok = slurp(golden_file) == table;
    golden_note = golden_ok ? "golden fixture matched" : "golden fixture MISMATCH";
  }

  const double secs = seconds_since(start);
  const bool pass = frac >= 0.95 && intervals_ok && golden_ok && secs < 1800.0;
  return {pass, fmt("certified %.1f%% (>=95%%), %zu suspected interval(s) all <=2 "
                    "cells: %s, %s, %.0fs (<1800s)",
                    100.0 * frac, report.suspected.size(),
                    intervals_ok ? "yes" : "NO", golden_note.c_str(), secs)};
}

// 6. lyapunov structure at E = 3 with the default production scale
Outcome criterion6(const Options& opt) {
  const auto start = Clock::now();
  const LyapunovEstimate est = estimate_spectrum(
      generator_set(3.0, 0.5), 1000000, 16, 1000, {20250808, 0}, opt.jobs);
  const SeparationReport rep = separation_report(est);
  const auto [d14, d23] = symmetry_defect(est);

  const bool gap_ok = rep.gap12 > 3.0 * (est.stderrs[0] + est.stderrs[1]);
  const bool pos_ok = est.gammas[1] > 3.0 * est.stderrs[1];
  const bool sym_ok = d14 < 3.0 * (est.stderrs[0] + est.stderrs[3]) &&
                      d23 < 3.0 * (est.stderrs[1] + est.stderrs[2]);
  const double secs = seconds_since(start);
  const bool pass = gap_ok && pos_ok && sym_ok && secs < 300.0;
  return {pass, fmt("gap12 %.5f vs 3(s1+s2) %.5f, gamma2 %.5f vs 3 s2 %.5f, "
                    "defects %.1e/%.1e, %.0fs (<300s)",
                    rep.gap12, 3.0 * (est.stderrs[0] + est.stderrs[1]),
                    est.gammas[1], 3.0 * est.stderrs[1], d14, d23, secs)};
}

// 7. null-randomness control: nu = delta_0 keeps every exponent near zero
Outcome criterion7(const Options& opt) {
  GeneratorSet g = generator_set(3.0, 0.5);
  g.weights = {1.0, 0.0, 0.0, 0.0};
  const std::int64_t n = 1000000;
  const LyapunovEstimate est = estimate_spectrum(g, n, 4, 1000, {31, 0}, opt.jobs);
  double worst = 0.0;
  for (const double gamma : est.gammas) worst = std::max(worst, std::abs(gamma));

  // independent oracle: the explicit power of the single elliptic matrix
  // stays bounded, so the exponents must vanish
  const double pow_norm = op_norm(matrix_power(g.mats[0].a, n));
  const bool pass = worst < 5e-3 && pow_norm < 30.0;
  return {pass, fmt("max |gamma| %.2e (<5e-3), ||A^n|| %.2f stays bounded", worst,
                    pow_norm)};
}

// 8. oracle equivalence: QR gamma1 vs explicit-product top singular value
Outcome criterion8(const Options&) {
  const GeneratorSet g = generator_set(3.0, 0.5);
  const std::int64_t n = 20;
  double worst = 0.0;
  for (int path = 0; path < 100; ++path) {
    const RngSeed seed{8000 + static_cast<std::uint64_t>(path), 0};
    const LyapunovEstimate est = estimate_spectrum(g, n, 1, 0, seed);

    SplitMix64 rng(seed);
    Mat4 prod = Mat4::identity();
    for (std::int64_t s = 0; s < n; ++s) {
      const int k = sample_config(g.weights, rng.next_double());
      prod = g.mats[static_cast<std::size_t>(k)].a * prod;
    }
    const double oracle = std::log(op_norm(prod)) / static_cast<double>(n);
    worst = std::max(worst, std::abs(est.gammas[0] - oracle));
  }
  return {worst <= 0.2, fmt("worst |gamma1 - oracle| %.4f (<=0.2) over 100 paths", worst)};
}

// 9. byte-identical outputs for identical configs and seeds
Outcome criterion9(const Options& opt) {
  if (opt.cli.empty()) return {false, "no --cli path provided"};
  const fs::path base = fs::temp_directory_path() / "lyacert_acceptance_c9";
  fs::remove_all(base);

  const std::string sweep_args =
      " sweep --emin 2.5 --emax 4.0 --grid 16 --bigm 100000 --lyap-every 8"
      " --steps 20000 --replicas 4 --burnin 200 --seed 42 --jobs 2";
  const std::string lyap_args =
      " lyapunov --energy 3.0 --steps 50000 --replicas 4 --burnin 500 --seed 42";

  for (const char* side : {"a", "b"}) {
    if (run(opt.cli + sweep_args + " --out " + (base / side / "sweep").string()) != 0)
      return {false, "sweep run failed"};
    if (run(opt.cli + lyap_args + " --out " + (base / side / "lyap").string()) != 0)
      return {false, "lyapunov run failed"};
  }

  auto first_subdir = [](const fs::path& p) {
    for (const auto& e : fs::directory_iterator(p)) return e.path();
    return p;
  };

  bool same = true;
  for (const std::string stem : {"sweep", "lyapunov"}) {
    const std::string dir = stem == "sweep" ? "sweep" : "lyap";
    for (const std::string ext : {".csv", ".json"}) {
      const auto fa = first_subdir(base / "a" / dir) / (stem + ext);
      const auto fb = first_subdir(base / "b" / dir) / (stem + ext);
      same = same && fs::exists(fa) && fs::exists(fb) && slurp(fa) == slurp(fb);
    }
  }
  return {same, same ? "sweep and lyapunov outputs byte-identical across reruns"
                     : "outputs differ between identical runs"};
}

const char* kDescriptions[] = {
    "symplecticity suite (1000 seeded energies)",
    "diophantine contract (100-point grid, big_m = 1e6)",
    "logarithm roundtrip (same grid)",
    "lie closure and explicit-path agreement",
    "sweep discreteness proxy (512 points on [2.1, 20])",
    "lyapunov structure at E = 3 (1e6 steps, 16 replicas)",
    "null-randomness control (delta_0 disorder)",
    "oracle equivalence (QR vs explicit product)",
    "determinism (byte-identical reruns)",
};

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) opt.cli = argv[++i];
    else if (arg == "--golden" && i + 1 < argc) opt.golden = argv[++i];
    else if (arg == "--only" && i + 1 < argc) opt.only = std::atoi(argv[++i]);
    else if (arg == "--jobs" && i + 1 < argc) opt.jobs = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--cli PATH] [--golden DIR] [--only N] [--jobs N]\n");
      return 2;
    }
  }
  if (opt.golden.empty()) opt.golden = "golden";
  fs::create_directories(opt.golden);

  Outcome (*criteria[])(const Options&) = {criterion1, criterion2, criterion3,
                                           criterion4, criterion5, criterion6,
                                           criterion7, criterion8, criterion9};
  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    if (opt.only != 0 && opt.only != i + 1) continue;
    Outcome out;
    try {
      out = criteria[i](opt);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                kDescriptions[i], out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
