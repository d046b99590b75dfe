#include <cmath>
#include <sstream>
#include <string>

#include "experiments_common.hpp"
#include "noonsim/error.hpp"
#include "noonsim/experiments.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim {

namespace {

double front_face(const GhostGeometry& g) { return g.slab_center[0] + 0.5 * g.thickness; }
double back_face(const GhostGeometry& g) { return g.slab_center[0] - 0.5 * g.thickness; }

bool in_slab(const GhostGeometry& g, double x, double y) {
  const double dy = std::abs(y - g.slab_center[1]);
  return x >= back_face(g) && x <= front_face(g) && dy > 0.5 * g.slit_width &&
         dy <= 0.5 * g.slit_width + g.side_length;
}

}  // namespace

void validate(const GhostGeometry& g) {
  if (!(g.eps_d >= 1.0) || !std::isfinite(g.eps_d)) throw ConfigError("ghost_scan.geometry.eps_d must be >= 1");
  if (!(g.slit_width > 0.0)) throw ConfigError("ghost_scan.geometry.slit_width must be > 0");
  if (!(g.side_length > 0.0)) throw ConfigError("ghost_scan.geometry.side_length must be > 0");
  if (!(g.thickness > 0.0)) throw ConfigError("ghost_scan.geometry.thickness must be > 0");
  if (!(g.slit_width < g.side_length)) {
    throw GeometryError("ghost_scan.geometry.slit_width must be smaller than side_length");
  }
  for (int a = 0; a < 2; ++a) {
    if (!(g.domain[static_cast<std::size_t>(a)] > 0.0)) {
      throw ConfigError("ghost_scan.geometry.domain entries must be > 0");
    }
  }
  const double hx = 0.5 * g.domain[0];
  const double hy = 0.5 * g.domain[1];
  const double half_span = 0.5 * g.slit_width + g.side_length;
  if (back_face(g) <= -hx || front_face(g) >= hx || g.slab_center[1] - half_span <= -hy ||
      g.slab_center[1] + half_span >= hy) {
    throw GeometryError("ghost_scan.geometry slab lies outside the domain");
  }
}

PermittivityMap build_ghost_geometry(const GhostGeometry& g) {
  validate(g);
  const Grid grid = Grid::centered_plane(g.cells, g.domain);
  PermittivityMap map(grid);
  for (std::size_t j = 0; j < grid.dof_count(); ++j) {
    const auto r = grid.position(j);
    if (in_slab(g, r[0], r[1])) map.set(j, g.eps_d);
  }
  return map;
}

double object_footprint(const GhostGeometry& g, double s) {
  const double dy = std::abs(s - g.slab_center[1]);
  return dy > 0.5 * g.slit_width && dy <= 0.5 * g.slit_width + g.side_length ? 1.0 : 0.0;
}

void validate(const GhostScanConfig& cfg) {
  validate(cfg.geometry);
  const auto& g = cfg.geometry;
  if (!(cfg.omega > 0.0)) throw ConfigError("ghost_scan.packet.omega must be > 0");
  if (!(cfg.sigma_omega > 0.0)) throw ConfigError("ghost_scan.packet.sigma_omega must be > 0");
  if (!(cfg.transverse_std > 0.0)) {
    throw ConfigError("ghost_scan.packet.transverse_std must be > 0");
  }
  if (!(cfg.launch_x > front_face(g))) {
    throw GeometryError("ghost_scan.packet.launch_x must lie on the pixel side of the object");
  }
  if (!(cfg.bucket_x < back_face(g))) {
    throw GeometryError("ghost_scan.bucket.x must lie behind the object");
  }
  if (!(cfg.pixel_x > cfg.launch_x)) {
    throw GeometryError("ghost_scan.pixel.x must lie opposite the bucket across the launch point");
  }
  const double hx = 0.5 * g.domain[0];
  for (double x : {cfg.launch_x, cfg.bucket_x, cfg.pixel_x}) {
    if (!(x > -hx && x < hx)) throw GeometryError("ghost_scan detector or launch x outside domain");
  }
  if (cfg.s_samples < 2) throw ConfigError("ghost_scan.s.samples must be >= 2");
  if (!(cfg.s_max > cfg.s_min)) throw ConfigError("ghost_scan.s.max must exceed s.min");
  if (cfg.s_min > g.slab_center[1] ||
      cfg.s_max <= g.slab_center[1] + 0.5 * g.slit_width + g.side_length) {
    throw ConfigError("ghost_scan.s range must span from the slit centre past the slab edge");
  }
  if (cfg.photons.empty()) throw ConfigError("ghost_scan.photons must not be empty");
  for (int n : cfg.photons) {
    if (n <= 0 || n % 2 != 0) throw ConfigError("ghost_scan.photons entries must be even and positive");
  }
  if (cfg.perturbations.empty()) throw ConfigError("ghost_scan.perturbations must not be empty");
  for (double p : cfg.perturbations) {
    if (!(p > -1.0)) throw ConfigError("ghost_scan.perturbations entries must be > -1");
  }
  if (!(cfg.echo_gate >= 0.0)) throw ConfigError("ghost_scan.pixel.echo_gate must be >= 0");
  if (cfg.bucket_time && !(*cfg.bucket_time >= 0.0)) {
    throw ConfigError("ghost_scan.bucket.time must be >= 0");
  }
  if (cfg.pixel_time && !(*cfg.pixel_time >= 0.0)) {
    throw ConfigError("ghost_scan.pixel.time must be >= 0");
  }
  if (!(cfg.eps_reg > 0.0)) throw ConfigError("ghost_scan.eps_reg must be > 0");
  const Grid grid = Grid::centered_plane(g.cells, g.domain);
  for (double s : {cfg.s_min, cfg.s_max}) {
    validate_packet({{cfg.launch_x, s}, {1.0, 0.0}, cfg.omega, cfg.sigma_omega, cfg.transverse_std},
                    grid);
  }
}

double default_bucket_time(const GhostScanConfig& cfg) {
  const auto& g = cfg.geometry;
  return (cfg.launch_x - cfg.bucket_x) + (std::sqrt(g.eps_d) - 1.0) * g.thickness;
}

double default_pixel_time(const GhostScanConfig& cfg) {
  return (cfg.pixel_x - cfg.launch_x) +
         cfg.echo_gate * 2.0 * (cfg.launch_x - front_face(cfg.geometry));
}

std::vector<double> scan_positions(const GhostScanConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.s_samples);
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = cfg.s_min + (cfg.s_max - cfg.s_min) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return s;
}

std::string perturbation_label(double p) {
  const long pct = std::lround(100.0 * p);
  if (pct == 0) return "0";
  return (pct < 0 ? "m" : "p") + std::to_string(std::labs(pct));
}

SweepResult run_ghost_perturbation(const GhostScanConfig& cfg, double perturbation) {
  validate(cfg);
  detail::Stopwatch clock;
  SweepResult out;
  out.variable = "s";
  out.label = perturbation_label(perturbation);

  GhostGeometry geom = cfg.geometry;
  geom.slit_width *= 1.0 + perturbation;
  const PermittivityMap map = build_ghost_geometry(geom);
  const Grid& grid = map.grid();
  std::size_t slab_cells = 0;
  for (double e : map.values()) slab_cells += e != 1.0 ? 1 : 0;
  out.meta.stage_seconds.emplace_back("geometry", clock.lap());

  const DiscreteOperators ops = build_operators_2d_tmz(map);
  const ModeBasis basis = solve_modes(ops, default_omega_floor(grid));
  out.meta.dof_count = grid.dof_count();
  out.meta.mode_count = basis.kept_count();
  out.meta.eigen_residual = eigen_residual(ops, basis);
  out.meta.stage_seconds.emplace_back("modes", clock.lap());

  const double t_bucket = cfg.bucket_time.value_or(default_bucket_time(cfg));
  const double t_pixel = cfg.pixel_time.value_or(default_pixel_time(cfg));
  std::vector<std::size_t> column;
  const int ib = grid.nearest_index(0, cfg.bucket_x);
  for (int iy = 0; iy < grid.cells(1); ++iy) column.push_back(grid.flat_index(ib, iy));

  out.x = scan_positions(cfg);
  const std::size_t m = out.x.size();
  struct Point {
    double capture_left = 0.0;
    double capture_right = 0.0;
    double overlap_abs = 0.0;
    std::vector<CFComponents> cf;
  };
  std::vector<Point> points(m);
  const Regularization raw_only{0.0, 1.0, 1.0};

  detail::parallel_for(m, [&](std::size_t k) {
    const double s = out.x[k];
    const WavepacketSpec left{{cfg.launch_x, s}, {-1.0, 0.0}, cfg.omega, cfg.sigma_omega,
                              cfg.transverse_std};
    const WavepacketSpec right{{cfg.launch_x, s}, {1.0, 0.0}, cfg.omega, cfg.sigma_omega,
                               cfg.transverse_std};
    const Projection pl = project_packet(basis, packet_profile(left, grid));
    const Projection pr = project_packet(basis, packet_profile(right, grid));
    Point& pt = points[k];
    pt.capture_left = pl.capture_fraction;
    pt.capture_right = pr.capture_fraction;
    pt.overlap_abs = std::abs(overlap(pl.amplitudes, pr.amplitudes));
    for (int n : cfg.photons) {
      NoonStateSpec state{n, pl.amplitudes, pr.amplitudes, 0.0};
      const DetectorSpec pixel{grid.nearest_cell(cfg.pixel_x, s), t_pixel, "z", n / 2};
      if (cfg.bucket_mode == BucketMode::column) {
        pt.cf.push_back(noon_cf_bucket(basis, state, column, t_bucket, pixel, raw_only));
      } else {
        const DetectorSpec bucket{grid.nearest_cell(cfg.bucket_x, s), t_bucket, "z", n / 2};
        pt.cf.push_back(noon_cf(basis, state, bucket, pixel, raw_only));
      }
    }
  });

  double max_overlap = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    detail::check_capture(points[k].capture_left, "left", out.meta);
    detail::check_capture(points[k].capture_right, "right", out.meta);
    max_overlap = std::max(max_overlap, points[k].overlap_abs);
  }
  for (std::size_t j = 0; j < cfg.photons.size(); ++j) {
    SweepSeries series;
    series.photons = cfg.photons[j];
    for (const auto& pt : points) series.points.push_back(pt.cf[j]);
    detail::finalize_series(series, cfg.eps_reg, out.variable, out.x);
    out.series.push_back(std::move(series));
  }
  out.object_footprint.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.object_footprint[k] = object_footprint(geom, out.x[k]);

  out.meta.diagnostics = {{"perturbation", perturbation},
                          {"slit_width", geom.slit_width},
                          {"slab_cells", static_cast<double>(slab_cells)},
                          {"bucket_time", t_bucket},
                          {"pixel_time", t_pixel},
                          {"bucket_cells", static_cast<double>(
                                               cfg.bucket_mode == BucketMode::column ? column.size() : 1)},
                          {"max_overlap_abs", max_overlap}};
  out.meta.stage_seconds.emplace_back("scan", clock.lap());
  return out;
}

std::vector<SweepResult> run_ghost_scan(const GhostScanConfig& cfg) {
  validate(cfg);
  std::vector<SweepResult> out;
  out.reserve(cfg.perturbations.size());
  for (double p : cfg.perturbations) out.push_back(run_ghost_perturbation(cfg, p));
  return out;
}

}  // namespace noonsim
