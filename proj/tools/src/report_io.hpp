// Serialization of certificates, sweep reports and Lyapunov estimates to the
// CSV/JSON files the CLI emits. Every file starts with a header block carrying
// the full configuration and seed, so a run can be replayed bitwise.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyacert/certify.hpp"
#include "lyacert/lyapunov.hpp"

namespace lyacert::io {

using ordered_json = nlohmann::ordered_json;

struct RunMeta {
  std::string command;
  std::string run_id;
  ordered_json config;  // flat key -> value map, insertion-ordered
};

// 17 significant digits: round-trip exact for doubles, '.' decimal separator.
std::string format_double(double x);

// Deterministic run id: FNV-1a over the command and canonicalized config.
std::string derive_run_id(const std::string& command, const ordered_json& config);

ordered_json hit_to_json(const DiophantineHit& hit);
ordered_json certificate_to_json(const DensityCertificate& cert);
ordered_json estimate_to_json(const LyapunovEstimate& est);

ordered_json certify_report_json(const RunMeta& meta,
                                 const std::vector<DensityCertificate>& certs);
ordered_json sweep_report_json(const RunMeta& meta, const SweepReport& report);
ordered_json lyapunov_report_json(const RunMeta& meta, const LyapunovEstimate& est);

std::string certify_report_csv(const RunMeta& meta,
                               const std::vector<DensityCertificate>& certs);
// The plot table: energy,rank,rank_margin,det_v1,det_v2,certified,m per omega;
// grid rows first, refinement probes after.
std::string sweep_report_csv(const RunMeta& meta, const SweepReport& report);
std::string lyapunov_report_csv(const RunMeta& meta, const LyapunovEstimate& est);

// Write with LF endings regardless of platform; creates parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lyacert::io
