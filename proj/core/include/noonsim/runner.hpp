#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "noonsim/config.hpp"

namespace noonsim {

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::string manifest_json;
};

/// Runs the configured experiment and writes its outputs under `out_dir`:
/// result_<kind>[_<pert>].csv, components_<kind>[_<pert>].csv, config.yaml and manifest.json
/// (plus omegas.csv / modes.csv / permittivity.csv for `modes` and oracle_report.json for
/// `oracle-check`). `stage` tracks the step in progress for error reporting.
RunReport execute(const RunConfig& cfg, const std::filesystem::path& out_dir, std::string& stage);

/// Wraps execute: prints "error [<stage>]: <message>" to `err` on failure and returns the
/// process exit code (0, 2 config, 3 numerical, 4 I/O).
int run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);

}  // namespace noonsim
