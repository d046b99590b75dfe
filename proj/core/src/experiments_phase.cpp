#include <algorithm>
#include <cmath>
#include <string>

#include "experiments_common.hpp"
#include "noonsim/error.hpp"
#include "noonsim/experiments.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/transfer_matrix.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim {

const SweepSeries& SweepResult::for_photons(int n) const {
  for (const auto& s : series) {
    if (s.photons == n) return s;
  }
  throw std::out_of_range("no series for N = " + std::to_string(n));
}

void validate(const PhaseSweepConfig& cfg) {
  if (!(cfg.domain_length > 0.0)) throw ConfigError("phase_sweep.domain_length must be > 0");
  if (cfg.cells < Grid::kMinCells) {
    throw ConfigError("phase_sweep.cells must be >= " + std::to_string(Grid::kMinCells));
  }
  if (cfg.photons.empty()) throw ConfigError("phase_sweep.photons must not be empty");
  int nmax = 0;
  for (int n : cfg.photons) {
    if (n <= 0 || n % 2 != 0) {
      throw ConfigError("phase_sweep.photons entries must be even and positive, got " +
                        std::to_string(n));
    }
    nmax = std::max(nmax, n);
  }
  if (cfg.theta_samples < 16 * nmax) {
    throw ConfigError("phase_sweep.theta.samples must be >= 16 * max(photons) = " +
                      std::to_string(16 * nmax));
  }
  if (!(cfg.theta_span > 0.0)) throw ConfigError("phase_sweep.theta.span must be > 0");
  if (!(cfg.packet_offset > 0.0) || cfg.packet_offset >= 0.5 * cfg.domain_length) {
    throw ConfigError("phase_sweep.packet.offset must lie in (0, domain_length/2)");
  }
  if (!(cfg.splitter_eps > 1.0)) throw ConfigError("phase_sweep.splitter.eps must be > 1");
  if (cfg.splitter_thickness && !(*cfg.splitter_thickness > 0.0)) {
    throw ConfigError("phase_sweep.splitter.thickness must be > 0");
  }
  if (!(cfg.detector_offset > 0.0) || cfg.detector_offset >= 0.5 * cfg.domain_length) {
    throw ConfigError("phase_sweep.detector.offset must lie in (0, domain_length/2)");
  }
  if (cfg.detection_time && !(*cfg.detection_time >= 0.0)) {
    throw ConfigError("phase_sweep.detector.time must be >= 0");
  }
  if (!(cfg.eps_reg > 0.0)) throw ConfigError("phase_sweep.eps_reg must be > 0");
  if (!(cfg.mean_photon_number > 0.0)) {
    throw ConfigError("phase_sweep.mean_photon_number must be > 0");
  }
  const Grid grid = Grid::centered_line(cfg.cells, cfg.domain_length);
  validate_packet({{-cfg.packet_offset, 0.0}, {1.0, 0.0}, cfg.omega, cfg.sigma_omega, 0.0}, grid);
}

PermittivityMap build_phase_map(const PhaseSweepConfig& cfg, double thickness) {
  const Grid grid = Grid::centered_line(cfg.cells, cfg.domain_length);
  PermittivityMap map(grid);
  const double lo = cfg.splitter_center - 0.5 * thickness;
  const double hi = cfg.splitter_center + 0.5 * thickness;
  const double dx = grid.cell_size(0);
  if (lo <= grid.origin(0) || hi >= grid.origin(0) + grid.length(0)) {
    throw GeometryError("phase_sweep.splitter lies outside the domain");
  }
  for (int i = 0; i < grid.cells(0); ++i) {
    const double a = grid.origin(0) + i * dx;
    const double covered = std::max(0.0, std::min(hi, a + dx) - std::max(lo, a));
    if (covered > 0.0) {
      map.set(grid.flat_index(i), 1.0 + (cfg.splitter_eps - 1.0) * covered / dx);
    }
  }
  const double edge = std::abs(cfg.splitter_center) + 0.5 * thickness;
  if (cfg.detector_offset <= edge) {
    throw GeometryError("phase_sweep.detector.offset must place detectors outside the splitter");
  }
  return map;
}

SweepResult run_phase_sweep(const PhaseSweepConfig& cfg) {
  validate(cfg);
  detail::Stopwatch clock;
  SweepResult out;
  out.variable = "theta";

  const double thickness =
      cfg.splitter_thickness ? *cfg.splitter_thickness
                             : calibrate_beamsplitter(cfg.omega, cfg.splitter_eps);
  const PermittivityMap map = build_phase_map(cfg, thickness);
  const Grid& grid = map.grid();
  out.meta.stage_seconds.emplace_back("geometry", clock.lap());

  const DiscreteOperators ops = build_operators_1d(map);
  const ModeBasis basis = solve_modes(ops, default_omega_floor(grid));
  out.meta.dof_count = grid.dof_count();
  out.meta.mode_count = basis.kept_count();
  out.meta.eigen_residual = eigen_residual(ops, basis);
  out.meta.stage_seconds.emplace_back("modes", clock.lap());

  WavepacketSpec left{{-cfg.packet_offset, 0.0}, {1.0, 0.0}, cfg.omega, cfg.sigma_omega, 0.0};
  WavepacketSpec right{{cfg.packet_offset, 0.0}, {-1.0, 0.0}, cfg.omega, cfg.sigma_omega, 0.0};
  const Projection pl = project_packet(basis, packet_profile(left, grid));
  const Projection pr = project_packet(basis, packet_profile(right, grid));
  detail::check_capture(pl.capture_fraction, "left", out.meta);
  detail::check_capture(pr.capture_fraction, "right", out.meta);
  const std::complex<double> gamma = overlap(pl.amplitudes, pr.amplitudes);
  out.meta.stage_seconds.emplace_back("packets", clock.lap());

  const double t_det = cfg.detection_time.value_or(cfg.packet_offset + cfg.detector_offset);
  DetectorSpec da{grid.nearest_cell(-cfg.detector_offset), t_det, "y", 1};
  DetectorSpec db{grid.nearest_cell(cfg.detector_offset), t_det, "y", 1};
  const BranchAmplitudes aa{detector_amplitude(basis, pl.amplitudes, da),
                            detector_amplitude(basis, pr.amplitudes, da)};
  const BranchAmplitudes ab{detector_amplitude(basis, pl.amplitudes, db),
                            detector_amplitude(basis, pr.amplitudes, db)};

  out.meta.diagnostics = {{"splitter_thickness", thickness},
                          {"splitter_transmission",
                           slab_transmission(cfg.omega, cfg.splitter_eps, thickness)},
                          {"detection_time", t_det},
                          {"overlap_abs", std::abs(gamma)},
                          {"alpha_left_abs", std::abs(aa.left)},
                          {"alpha_right_abs", std::abs(aa.right)},
                          {"beta_left_abs", std::abs(ab.left)},
                          {"beta_right_abs", std::abs(ab.right)}};

  const auto m = static_cast<std::size_t>(cfg.theta_samples);
  out.x.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.x[k] = cfg.theta_start + cfg.theta_span * static_cast<double>(k) / static_cast<double>(m);
  }

  const Regularization raw_only{0.0, 1.0, 1.0};
  for (int n : cfg.photons) {
    SweepSeries series;
    series.photons = n;
    series.points.resize(m);
    detail::parallel_for(m, [&](std::size_t k) {
      series.points[k] = noon_cf_terms(n, out.x[k], gamma, std::span(&aa, 1), ab, raw_only);
    });
    detail::finalize_series(series, cfg.eps_reg, out.variable, out.x);
    out.series.push_back(std::move(series));
  }

  std::vector<double> classical(m);
  CoherentStateSpec coherent{cfg.mean_photon_number, pl.amplitudes, pr.amplitudes, 0.0};
  for (std::size_t k = 0; k < m; ++k) {
    coherent.theta = out.x[k];
    classical[k] = coherent_baseline(basis, coherent, db);
  }
  out.classical_norm = detail::normalized_to_peak(classical);
  out.meta.stage_seconds.emplace_back("sweep", clock.lap());
  return out;
}

}  // namespace noonsim
