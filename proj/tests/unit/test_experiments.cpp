#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noonsim/error.hpp"
#include "noonsim/experiments.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

using namespace noonsim;

namespace {

// Coarse version of the default scan: same object and detector layout, small grid.
GhostScanConfig small_ghost() {
  GhostScanConfig cfg;
  cfg.geometry.cells = {40, 32};
  cfg.s_min = -0.3;
  cfg.s_max = 0.3;
  cfg.s_samples = 9;
  cfg.photons = {2, 4};
  cfg.perturbations = {0.0};
  return cfg;
}

}  // namespace

TEST(GhostGeometry, DefaultSlabCellCountMatchesFootprintArea) {
  const GhostGeometry g;
  const auto map = build_ghost_geometry(g);
  const Grid& grid = map.grid();
  const auto count = std::count(map.values().begin(), map.values().end(), g.eps_d);
  const double dx = grid.cell_size(0);
  const double dy = grid.cell_size(1);
  const double want = 2.0 * g.side_length * g.thickness / (dx * dy);
  // One row of cells per edge: two segments, each bounded by two x-edges and two y-edges.
  const double tol = 2.0 * (2.0 * g.thickness / dx + 2.0 * g.side_length / dy);
  EXPECT_NEAR(static_cast<double>(count), want, tol);
  EXPECT_GT(count, 0);
}

TEST(GhostGeometry, PerturbedSlitCoversExactlyCellsWithinHalfWidth) {
  for (double pert : {-0.1, 0.1}) {
    GhostGeometry g;
    g.slit_width *= 1.0 + pert;
    const auto map = build_ghost_geometry(g);
    const Grid& grid = map.grid();
    const double back = g.slab_center[0] - 0.5 * g.thickness;
    const double front = g.slab_center[0] + 0.5 * g.thickness;
    int slit_cells = 0;
    for (std::size_t j = 0; j < grid.dof_count(); ++j) {
      const auto r = grid.position(j);
      if (r[0] < back || r[0] > front) {
        EXPECT_EQ(map[j], 1.0);
        continue;
      }
      const double dy = std::abs(r[1] - g.slab_center[1]);
      if (dy <= 0.5 * g.slit_width) {
        EXPECT_EQ(map[j], 1.0) << "slit cell " << j;
        ++slit_cells;
      } else if (dy <= 0.5 * g.slit_width + g.side_length) {
        EXPECT_EQ(map[j], g.eps_d) << "slab cell " << j;
      }
    }
    EXPECT_GT(slit_cells, 0);
  }
}

TEST(GhostGeometry, ValidationRejectsDegenerateObjects) {
  GhostGeometry g;
  g.slit_width = g.side_length;
  EXPECT_THROW(build_ghost_geometry(g), GeometryError);
  g = GhostGeometry{};
  g.slab_center = {-0.68, 0.0};
  EXPECT_THROW(build_ghost_geometry(g), GeometryError);
  g = GhostGeometry{};
  g.thickness = 0.0;
  EXPECT_THROW(build_ghost_geometry(g), ConfigError);
}

TEST(GhostGeometry, FootprintIsOneOnSolidSlabOnly) {
  const GhostGeometry g;
  EXPECT_EQ(object_footprint(g, 0.0), 0.0);
  EXPECT_EQ(object_footprint(g, 0.1), 1.0);
  EXPECT_EQ(object_footprint(g, -0.1), 1.0);
  EXPECT_EQ(object_footprint(g, 0.3), 0.0);
}

TEST(GhostScan, LabelsAndDefaultTimes) {
  EXPECT_EQ(perturbation_label(-0.1), "m10");
  EXPECT_EQ(perturbation_label(0.0), "0");
  EXPECT_EQ(perturbation_label(0.1), "p10");
  const GhostScanConfig cfg;
  EXPECT_NEAR(default_pixel_time(cfg), 0.2 + 0.55 * 2.0 * 0.3, 1e-9);
  EXPECT_NEAR(default_bucket_time(cfg), 0.4167 + 0.0967, 1e-12);
  const auto s = scan_positions(cfg);
  ASSERT_EQ(s.size(), 81u);
  EXPECT_DOUBLE_EQ(s.front(), -0.4);
  EXPECT_DOUBLE_EQ(s.back(), 0.4);
  EXPECT_NEAR(s[40], 0.0, 1e-15);
}

TEST(GhostScan, ValidationNamesOffendingKey) {
  GhostScanConfig cfg;
  cfg.bucket_x = 0.0;
  try {
    validate(cfg);
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost_scan.bucket.x"), std::string::npos);
  }
  cfg = GhostScanConfig{};
  cfg.photons = {3};
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = GhostScanConfig{};
  cfg.s_max = 0.1;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(GhostScan, MirrorSymmetricObjectGivesMirrorSymmetricCf) {
  const auto cfg = small_ghost();
  const auto r = run_ghost_perturbation(cfg, 0.0);
  ASSERT_EQ(r.x.size(), 9u);
  for (const auto& series : r.series) {
    for (std::size_t k = 0; k < r.x.size(); ++k) {
      const std::size_t m = r.x.size() - 1 - k;
      EXPECT_NEAR(series.raw[k], series.raw[m], 1e-8 * std::max(1.0, std::abs(series.raw[k])))
          << "N = " << series.photons << " s = " << r.x[k];
    }
    EXPECT_NEAR(*std::max_element(series.normalized.begin(), series.normalized.end()), 1.0,
                1e-15);
  }
  EXPECT_EQ(r.object_footprint.size(), r.x.size());
}

TEST(GhostScan, IsDeterministic) {
  const auto cfg = small_ghost();
  const auto a = run_ghost_perturbation(cfg, 0.1);
  const auto b = run_ghost_perturbation(cfg, 0.1);
  for (std::size_t i = 0; i < a.series.size(); ++i) {
    EXPECT_EQ(a.series[i].raw, b.series[i].raw);
  }
}

TEST(PhaseSweep, ValidationRejectsUndersampledTheta) {
  PhaseSweepConfig cfg;
  cfg.theta_samples = 50;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = PhaseSweepConfig{};
  cfg.photons = {2, 5};
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = PhaseSweepConfig{};
  cfg.domain_length = 1.5;  // 4-sigma envelope no longer fits
  EXPECT_THROW(validate(cfg), GeometryError);
}

TEST(PhaseSweep, SplitterIsVolumeAveragedIntoCells) {
  PhaseSweepConfig cfg;
  const double d = 0.0004;
  const auto map = build_phase_map(cfg, d);
  const double dx = map.grid().cell_size(0);
  double optical = 0.0;
  for (double e : map.values()) optical += (e - 1.0) * dx;
  EXPECT_NEAR(optical, (cfg.splitter_eps - 1.0) * d, 1e-15);
}

TEST(PhaseSweep, CoarseSweepHasNFoldFringes) {
  PhaseSweepConfig cfg;
  cfg.cells = 1200;
  cfg.omega = 300.0;
  cfg.photons = {2, 4};
  cfg.theta_samples = 96;
  const auto r = run_phase_sweep(cfg);
  ASSERT_EQ(r.x.size(), 96u);
  ASSERT_EQ(r.classical_norm.size(), 96u);
  for (int n : cfg.photons) {
    const auto& s = r.for_photons(n);
    EXPECT_NEAR(estimate_fringe_period(r.x, s.normalized), 2.0 * std::numbers::pi / n,
                0.02 * 2.0 * std::numbers::pi / n);
  }
  EXPECT_NEAR(estimate_fringe_period(r.x, r.classical_norm), 2.0 * std::numbers::pi,
              0.02 * 2.0 * std::numbers::pi);
  EXPECT_THROW((void)r.for_photons(6), std::out_of_range);
}

TEST(PhaseSweep, DefaultPacketPairIsNearlyOrthogonalWithoutSplitter) {
  const PhaseSweepConfig cfg;
  const Grid grid = Grid::centered_line(cfg.cells, cfg.domain_length);
  const auto basis = solve_modes(build_operators(PermittivityMap(grid)), default_omega_floor(grid));
  const auto l = project_packet(
      basis, packet_profile({{-cfg.packet_offset, 0.0}, {1.0, 0.0}, cfg.omega, cfg.sigma_omega, 0.0},
                            grid));
  const auto r = project_packet(
      basis, packet_profile({{cfg.packet_offset, 0.0}, {-1.0, 0.0}, cfg.omega, cfg.sigma_omega, 0.0},
                            grid));
  EXPECT_LT(std::abs(overlap(l.amplitudes, r.amplitudes)), 1e-3);
}
