#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gpcode/geometry.hpp"

namespace gpcode {

struct GeometrySource {
  enum class Kind { Family, File } kind = Kind::Family;
  std::string family;  // ngon | pg2 | wq | q4 | q5minus | hexagon
  std::uint32_t q = 0;
  bool dual = false;
  std::filesystem::path path;  // for Kind::File
};

struct GuardConfig {
  std::optional<std::uint32_t> w_max;  // default s+2
  bool override_w_max = false;
  std::uint32_t blocking_cap = 0;      // 0: default s+1
  std::uint32_t dual_cap = 4;
  std::uint64_t dual_full_enum_limit = 1u << 16;
  bool classify_blocking_subsets = true;
  std::uint64_t subset_work_guard = 200'000'000;
  std::uint32_t star_trials = 200;
};

/// Fixed seed implies a byte-identical report, regardless of GPCODE_THREADS.
struct RunConfig {
  GeometrySource source;
  std::vector<std::uint32_t> field_chars = {2, 3, 5, 7};
  // axioms | cx | minwt | traces | blocking | perp | dualwt
  std::vector<std::string> checks = {"axioms", "cx",   "minwt",  "traces",
                                     "blocking", "perp", "dualwt"};
  GuardConfig guards;
  std::uint64_t seed = 0;
};

RunConfig config_from_json_string(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Builds the configured geometry (family constructor or gpg import,
/// optionally dualized).
Geometry build_source_geometry(const GeometrySource& source);

struct PipelineResult {
  int exit_code = 0;  // 0 all assertions pass, 1 anomaly found
  std::string report_json;  // canonical rendering, ends with '\n'
  std::vector<std::string> anomalies;
  std::string text_summary;
};

/// Runs the requested checks in fixed order (axioms, cx, minwt,
/// classification, blocking, perp, dual). When the field condition fails for
/// a field, the theorem-level expectations are demoted to observations and
/// never raise anomalies. A certification failure aborts downstream checks
/// and yields a partial report.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace gpcode
