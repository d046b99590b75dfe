#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noonsim/correlation.hpp"
#include "noonsim/grid.hpp"

namespace noonsim {

/// Retained-mode capture below this fraction is reported as a warning.
inline constexpr double kCaptureWarn = 0.99;
/// Retained-mode capture below this fraction is an error.
inline constexpr double kCaptureMin = 0.90;

struct SweepSeries {
  int photons = 2;
  std::vector<CFComponents> points;
  std::vector<double> raw;
  /// raw divided by its sweep maximum.
  std::vector<double> normalized;
};

struct SweepMetadata {
  std::string config_hash;
  std::size_t dof_count = 0;
  std::size_t mode_count = 0;
  double eigen_residual = 0.0;
  /// Smallest capture fraction seen per packet label over the sweep.
  std::vector<std::pair<std::string, double>> capture_fractions;
  /// Named scalars describing the run (slab thickness, detection times, overlap, ...).
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::pair<std::string, double>> stage_seconds;
  std::vector<std::string> warnings;
};

struct SweepResult {
  std::string variable;  // "theta" or "s"
  std::string label;     // perturbation tag, empty for the phase sweep
  std::vector<double> x;
  std::vector<SweepSeries> series;
  std::vector<double> classical_norm;    // phase sweep only
  std::vector<double> object_footprint;  // ghost scan only
  SweepMetadata meta;

  [[nodiscard]] const SweepSeries& for_photons(int n) const;
};

// ---------------------------------------------------------------- phase sensing (1D)

struct PhaseSweepConfig {
  double domain_length = 2.52;
  int cells = 2000;
  double packet_offset = 0.375;
  double omega = 526.0;
  double sigma_omega = 1.59;
  double splitter_center = 0.0;
  double splitter_eps = 12.0;
  /// Calibrated to 50:50 at `omega` when absent.
  std::optional<double> splitter_thickness;
  double detector_offset = 0.7;
  /// Defaults to the ballistic transit packet_offset + detector_offset.
  std::optional<double> detection_time;
  std::vector<int> photons{2, 4, 6};
  int theta_samples = 192;
  double theta_start = 0.0;
  double theta_span = 2.0 * std::numbers::pi;
  double eps_reg = 1e-9;
  double mean_photon_number = 1.0;

  bool operator==(const PhaseSweepConfig&) const = default;
};

void validate(const PhaseSweepConfig& cfg);

/// Vacuum line with the splitter slab. The slab is usually thinner than a cell, so each cell
/// gets the volume-weighted average of eps over the part of the slab it contains.
PermittivityMap build_phase_map(const PhaseSweepConfig& cfg, double thickness);

SweepResult run_phase_sweep(const PhaseSweepConfig& cfg);

/// Period of the dominant nonzero harmonic of a uniformly sampled series, in units of the
/// sampling coordinate. The span is taken as samples * spacing (periodic sampling).
double estimate_fringe_period(std::span<const double> theta, std::span<const double> values);

// ---------------------------------------------------------------- ghost imaging (2D)

/// Slab of permittivity eps_d, thickness along x, with a centred slit of width slit_width
/// between two solid sides of length side_length along y.
struct GhostGeometry {
  double eps_d = 4.0;
  double slit_width = 0.0433;
  double side_length = 0.17;
  double thickness = 0.0967;
  std::array<double, 2> slab_center{-0.34835, 0.0};
  std::array<double, 2> domain{1.4, 1.0};
  std::array<int, 2> cells{89, 64};

  bool operator==(const GhostGeometry&) const = default;
};

void validate(const GhostGeometry& geom);

/// Cells whose centres fall inside the slab get eps_d, everything else is vacuum.
PermittivityMap build_ghost_geometry(const GhostGeometry& geom);

/// 1 where a ray at transverse offset s hits solid slab, 0 in the slit or outside the sides.
double object_footprint(const GhostGeometry& geom, double s);

enum class BucketMode { column, point };

struct GhostScanConfig {
  GhostGeometry geometry;
  double omega = 50.0;
  double sigma_omega = 5.0;
  double transverse_std = 0.04;
  double launch_x = 0.0;
  double bucket_x = -0.4167;
  BucketMode bucket_mode = BucketMode::column;
  /// Defaults to the ballistic optical path from launch to bucket, including the slab delay.
  std::optional<double> bucket_time;
  double pixel_x = 0.2;
  /// Pixel gate as a fraction of the round trip launch -> object front face -> launch.
  double echo_gate = 0.55;
  /// Defaults to (pixel_x - launch_x) + echo_gate * 2 * (launch_x - front face).
  std::optional<double> pixel_time;
  double s_min = -0.4;
  double s_max = 0.4;
  int s_samples = 81;
  std::vector<int> photons{2, 4, 8};
  std::vector<double> perturbations{-0.1, 0.0, 0.1};
  double eps_reg = 1e-9;

  bool operator==(const GhostScanConfig&) const = default;
};

void validate(const GhostScanConfig& cfg);
double default_bucket_time(const GhostScanConfig& cfg);
double default_pixel_time(const GhostScanConfig& cfg);
std::vector<double> scan_positions(const GhostScanConfig& cfg);

/// Tag used in file names: "m10", "0", "p10" for -10 %, 0, +10 %.
std::string perturbation_label(double perturbation);

/// One geometry, slit width scaled by (1 + perturbation).
SweepResult run_ghost_perturbation(const GhostScanConfig& cfg, double perturbation);

/// One result per configured perturbation, in configuration order.
std::vector<SweepResult> run_ghost_scan(const GhostScanConfig& cfg);

/// 10 %-90 % rise distance of the single transition between the minimum and maximum of the
/// series. Returns one sample spacing when both crossings fall in the same interval.
double edge_sharpness(std::span<const double> s, std::span<const double> values);

}  // namespace noonsim
