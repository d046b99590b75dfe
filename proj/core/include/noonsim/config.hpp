#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noonsim/experiments.hpp"

namespace noonsim {

enum class ExperimentKind { phase_sweep, ghost_scan, oracle_check, modes };
enum class Normalization { raw, max };

std::string to_string(ExperimentKind kind);
std::string to_string(Normalization mode);

/// Standalone spectrum dump of a uniform or CSV-defined permittivity map.
struct ModesConfig {
  int dimension = 1;
  std::array<int, 2> cells{64, 64};
  std::array<double, 2> cell_size{0.01, 0.01};
  double background_eps = 1.0;
  /// Dense map file ("eps1d,nx" or "eps2d,nx,ny" header); overrides background_eps.
  std::optional<std::string> permittivity_csv;
  std::optional<double> omega_floor;
  bool dump_modes = false;

  bool operator==(const ModesConfig&) const = default;
};

/// Randomized closed-form versus Wick-enumeration comparison.
struct OracleCheckConfig {
  int draws = 50;
  std::vector<int> photons{2, 4};
  std::vector<int> mode_counts{2, 3, 6};
  std::uint64_t seed = 20240611;
  double tolerance = 1e-10;

  bool operator==(const OracleCheckConfig&) const = default;
};

struct RunConfig {
  ExperimentKind kind = ExperimentKind::phase_sweep;
  std::string output_dir = "out";
  Normalization normalization = Normalization::max;
  bool strict = true;
  PhaseSweepConfig phase;
  GhostScanConfig ghost;
  OracleCheckConfig oracle;
  ModesConfig modes;

  /// Dotted keys that were absent from the file, with the value applied. Not part of equality.
  std::vector<std::pair<std::string, std::string>> defaults_applied;
  /// Non-fatal findings, e.g. unknown keys when strict is off.
  std::vector<std::string> warnings;

  bool operator==(const RunConfig& o) const {
    return kind == o.kind && output_dir == o.output_dir && normalization == o.normalization &&
           strict == o.strict && phase == o.phase && ghost == o.ghost && oracle == o.oracle &&
           modes == o.modes;
  }
};

/// Parses and validates a YAML config file. Relative file references resolve against the
/// file's directory. Throws ConfigError naming the offending key, IoError if unreadable.
RunConfig parse_config(const std::filesystem::path& path);

/// Same as parse_config for in-memory text.
RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& base_dir = std::filesystem::path{"."});

/// YAML text of the effective config with every default materialized.
std::string emit_config(const RunConfig& cfg);

/// Canonical sorted-key JSON of the effective config.
std::string canonical_config_json(const RunConfig& cfg);

/// Hex SHA-256 of canonical_config_json.
std::string config_hash(const RunConfig& cfg);

/// Range and cross-field checks; called by the parsers.
void validate(const RunConfig& cfg);

}  // namespace noonsim
