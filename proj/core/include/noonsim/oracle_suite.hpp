#pragma once

#include "noonsim/config.hpp"

namespace noonsim {

struct OracleReport {
  int draws = 0;
  double max_rel_numerator = 0.0;
  double max_rel_denom_alpha = 0.0;
  double max_rel_denom_beta = 0.0;
  double max_rel_state_norm = 0.0;
  double max_rel_value = 0.0;
  /// Largest of the five component deviations.
  double max_rel = 0.0;
  bool flags_match = true;
  double seconds = 0.0;
  bool pass = false;
};

/// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_deviation(double a, double b);

/// Compares noon_cf with noon_cf_oracle on random bases, amplitudes, detectors and phases:
/// `draws` draws for every (N, mode count) pair. Deterministic for a given seed.
OracleReport run_oracle_suite(const OracleCheckConfig& cfg);

}  // namespace noonsim
