#include "report_io.hpp"

#include <cstdio>
#include <fstream>

#include "lyacert/version.hpp"

namespace lyacert::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string derive_run_id(const std::string& command, const ordered_json& config) {
  const std::string canon = command + "\n" + config.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : canon) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json hit_to_json(const DiophantineHit& hit) {
  return ordered_json{{"m", hit.m},       {"x1", hit.x1},     {"x2", hit.x2},
                      {"err1", hit.err1}, {"err2", hit.err2}, {"bound", hit.bound}};
}

ordered_json certificate_to_json(const DensityCertificate& cert) {
  ordered_json j;
  j["energy"] = cert.energy;
  j["certified"] = cert.certified;
  j["rank"] = cert.rank;
  j["rank_margin"] = cert.rank_margin;
  j["delta"] = cert.delta;
  j["big_m"] = cert.big_m;
  j["det_v1"] = cert.det_v1;
  j["det_v2"] = cert.det_v2;
  j["dets_independent"] = cert.dets_independent;
  j["implication"] = to_string(cert.implication);

  const auto omegas = BernoulliConfig::all();
  ordered_json hits = ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    ordered_json h;
    h["omega"] = {omegas[static_cast<std::size_t>(i)].omega1,
                  omegas[static_cast<std::size_t>(i)].omega2};
    if (cert.hits[static_cast<std::size_t>(i)])
      h["hit"] = hit_to_json(*cert.hits[static_cast<std::size_t>(i)]);
    else
      h["hit"] = nullptr;
    h["dist"] = cert.dists[static_cast<std::size_t>(i)];
    hits.push_back(std::move(h));
  }
  j["hits"] = std::move(hits);
  if (!cert.diagnostic.empty()) j["diagnostic"] = cert.diagnostic;
  return j;
}

ordered_json estimate_to_json(const LyapunovEstimate& est) {
  const auto [d14, d23] = symmetry_defect(est);
  const SeparationReport rep = separation_report(est);
  ordered_json j;
  j["energy"] = est.energy;
  j["gammas"] = est.gammas;
  j["stderrs"] = est.stderrs;
  j["n_steps"] = est.n_steps;
  j["n_replicas"] = est.n_replicas;
  j["burn_in"] = est.burn_in;
  j["seed"] = est.seed.seed;
  j["stream"] = est.seed.stream;
  j["defect14"] = d14;
  j["defect23"] = d23;
  j["gap12"] = rep.gap12;
  j["positivity_margin"] = rep.positivity_margin;
  j["significant"] = rep.significant;
  return j;
}

namespace {

ordered_json report_shell(const RunMeta& meta) {
  ordered_json j;
  j["artifact"] = {{"name", "lyacert"}, {"version", kVersion}};
  j["command"] = meta.command;
  j["run_id"] = meta.run_id;
  j["config"] = meta.config;
  return j;
}

std::string csv_header_block(const RunMeta& meta) {
  std::string out;
  out += "# lyacert ";
  out += kVersion;
  out += "\n# command = " + meta.command;
  out += "\n# run_id = " + meta.run_id + "\n";
  for (const auto& [key, value] : meta.config.items())
    out += "# " + key + " = " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return out;
}

std::string sweep_row(const DensityCertificate& c) {
  std::string row = format_double(c.energy);
  row += "," + std::to_string(c.rank);
  row += "," + format_double(c.rank_margin);
  row += "," + format_double(c.det_v1);
  row += "," + format_double(c.det_v2);
  row += c.certified ? ",1" : ",0";
  for (int i = 0; i < 4; ++i) {
    const auto& hit = c.hits[static_cast<std::size_t>(i)];
    row += "," + std::to_string(hit ? hit->m : 0);
  }
  return row + "\n";
}

}  // namespace

ordered_json certify_report_json(const RunMeta& meta,
                                 const std::vector<DensityCertificate>& certs) {
  ordered_json j = report_shell(meta);
  ordered_json arr = ordered_json::array();
  for (const auto& c : certs) arr.push_back(certificate_to_json(c));
  j["certificates"] = std::move(arr);
  return j;
}

ordered_json sweep_report_json(const RunMeta& meta, const SweepReport& report) {
  ordered_json j = report_shell(meta);
  j["grid"] = report.grid;

  ordered_json certs = ordered_json::array();
  for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = std::move(certs);

  ordered_json refs = ordered_json::array();
  for (const auto& c : report.refinements) refs.push_back(certificate_to_json(c));
  j["refinements"] = std::move(refs);

  ordered_json sus = ordered_json::array();
  for (const auto& s : report.suspected)
    sus.push_back(ordered_json{{"e_lo", s.e_lo},
                               {"e_hi", s.e_hi},
                               {"min_rank", s.min_rank},
                               {"margin_min", s.margin_min},
                               {"margin_at", s.margin_at}});
  j["suspected_exceptional"] = std::move(sus);

  ordered_json checks = ordered_json::array();
  for (const auto& c : report.lyapunov_checks) {
    ordered_json e = estimate_to_json(c.estimate);
    e["consistent"] = c.consistent;
    checks.push_back(std::move(e));
  }
  j["lyapunov_checks"] = std::move(checks);
  return j;
}

ordered_json lyapunov_report_json(const RunMeta& meta, const LyapunovEstimate& est) {
  ordered_json j = report_shell(meta);
  j["estimate"] = estimate_to_json(est);
  return j;
}

std::string certify_report_csv(const RunMeta& meta,
                               const std::vector<DensityCertificate>& certs) {
  std::string out = csv_header_block(meta);
  out += "energy,certified,rank,rank_margin,det_v1,det_v2,delta,big_m,"
         "m_00,m_10,m_01,m_11,dist_00,dist_10,dist_01,dist_11\n";
  for (const auto& c : certs) {
    out += format_double(c.energy);
    out += c.certified ? ",1" : ",0";
    out += "," + std::to_string(c.rank);
    out += "," + format_double(c.rank_margin);
    out += "," + format_double(c.det_v1);
    out += "," + format_double(c.det_v2);
    out += "," + format_double(c.delta);
    out += "," + std::to_string(c.big_m);
    for (int i = 0; i < 4; ++i) {
      const auto& hit = c.hits[static_cast<std::size_t>(i)];
      out += "," + std::to_string(hit ? hit->m : 0);
    }
    for (int i = 0; i < 4; ++i)
      out += "," + format_double(c.dists[static_cast<std::size_t>(i)]);
    out += "\n";
  }
  return out;
}

std::string sweep_report_csv(const RunMeta& meta, const SweepReport& report) {
  std::string out = csv_header_block(meta);
  out += "energy,rank,rank_margin,det_v1,det_v2,certified,m_00,m_10,m_01,m_11\n";
  for (const auto& c : report.certificates) out += sweep_row(c);
  for (const auto& c : report.refinements) out += sweep_row(c);
  return out;
}

std::string lyapunov_report_csv(const RunMeta& meta, const LyapunovEstimate& est) {
  const auto [d14, d23] = symmetry_defect(est);
  const SeparationReport rep = separation_report(est);

  std::string out = csv_header_block(meta);
  out += "energy,gamma1,gamma2,gamma3,gamma4,stderr1,stderr2,stderr3,stderr4,"
         "defect14,defect23,gap12,positivity_margin,significant,"
         "n_steps,n_replicas,burn_in,seed,stream\n";
  out += format_double(est.energy);
  for (const double g : est.gammas) out += "," + format_double(g);
  for (const double s : est.stderrs) out += "," + format_double(s);
  out += "," + format_double(d14);
  out += "," + format_double(d23);
  out += "," + format_double(rep.gap12);
  out += "," + format_double(rep.positivity_margin);
  out += rep.significant ? ",1" : ",0";
  out += "," + std::to_string(est.n_steps);
  out += "," + std::to_string(est.n_replicas);
  out += "," + std::to_string(est.burn_in);
  out += "," + std::to_string(est.seed.seed);
  out += "," + std::to_string(est.seed.stream);
  out += "\n";
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) throw std::runtime_error("failed to write " + path.string());
}

}  // namespace lyacert::io
