#include <gtest/gtest.h>

#include <string>

#include "noonsim/config.hpp"
#include "noonsim/error.hpp"

using namespace noonsim;

namespace {

std::string error_of(const std::string& yaml) {
  try {
    (void)parse_config_text(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, EmptyDocumentAppliesEveryDefault) {
  const auto cfg = parse_config_text("experiment: phase-sweep\n");
  EXPECT_EQ(cfg.kind, ExperimentKind::phase_sweep);
  EXPECT_EQ(cfg.phase, PhaseSweepConfig{});
  EXPECT_EQ(cfg.ghost, GhostScanConfig{});
  EXPECT_EQ(cfg.normalization, Normalization::max);
  EXPECT_TRUE(cfg.strict);
  EXPECT_FALSE(cfg.defaults_applied.empty());
  bool found = false;
  for (const auto& [key, value] : cfg.defaults_applied) {
    if (key == "phase_sweep.cells") {
      found = true;
      EXPECT_EQ(value, "2000");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Config, ReadsNestedValues) {
  const auto cfg = parse_config_text(R"(experiment: ghost-scan
ghost_scan:
  geometry:
    cells: [48, 40]
  packet:
    transverse_std: 0.05
  s: {min: -0.3, max: 0.3, samples: 31}
  photons: [2, 4]
  bucket: {mode: point, time: 0.6}
)");
  EXPECT_EQ(cfg.kind, ExperimentKind::ghost_scan);
  EXPECT_EQ(cfg.ghost.geometry.cells, (std::array<int, 2>{48, 40}));
  EXPECT_DOUBLE_EQ(cfg.ghost.transverse_std, 0.05);
  EXPECT_EQ(cfg.ghost.s_samples, 31);
  EXPECT_EQ(cfg.ghost.photons, (std::vector<int>{2, 4}));
  EXPECT_EQ(cfg.ghost.bucket_mode, BucketMode::point);
  ASSERT_TRUE(cfg.ghost.bucket_time.has_value());
  EXPECT_DOUBLE_EQ(*cfg.ghost.bucket_time, 0.6);
}

TEST(Config, NegativeCellSizeNamesKey) {
  const auto msg = error_of("experiment: modes\nmodes:\n  cell_size: [-0.01]\n");
  EXPECT_NE(msg.find("modes.cell_size"), std::string::npos) << msg;
}

TEST(Config, DuplicateKeyIsRejected) {
  const auto msg = error_of("experiment: phase-sweep\nphase_sweep:\n  cells: 100\n  cells: 200\n");
  EXPECT_NE(msg.find("cells"), std::string::npos) << msg;
  EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;
}

TEST(Config, UnknownKeyIsErrorWhenStrictAndWarningOtherwise) {
  const auto msg = error_of("experiment: phase-sweep\nphase_sweep:\n  cellz: 100\n");
  EXPECT_NE(msg.find("phase_sweep.cellz"), std::string::npos) << msg;
  const auto cfg = parse_config_text("strict: false\nexperiment: phase-sweep\nphase_sweep:\n  cellz: 1\n");
  ASSERT_EQ(cfg.warnings.size(), 1u);
  EXPECT_NE(cfg.warnings[0].find("phase_sweep.cellz"), std::string::npos);
}

TEST(Config, TypeMismatchAndRangeViolationsAreRejected) {
  EXPECT_FALSE(error_of("experiment: phase-sweep\nphase_sweep:\n  cells: many\n").empty());
  EXPECT_FALSE(error_of("experiment: phase-sweep\nphase_sweep:\n  photons: [3]\n").empty());
  EXPECT_FALSE(error_of("experiment: teleport\n").empty());
  EXPECT_FALSE(error_of("experiment: phase-sweep\nnormalization: log\n").empty());
  EXPECT_FALSE(error_of("- just\n- a list\n").empty());
}

TEST(Config, EmitThenParseRoundTrips) {
  const auto cfg = parse_config_text(R"(experiment: ghost-scan
normalization: raw
ghost_scan:
  packet: {omega: 40, sigma_omega: 4}
  pixel: {echo_gate: 0.5}
  perturbations: [0.0, 0.05]
phase_sweep:
  splitter: {thickness: 0.0004}
  theta: {samples: 200}
)");
  const auto again = parse_config_text(emit_config(cfg));
  EXPECT_EQ(cfg, again);
  EXPECT_EQ(config_hash(cfg), config_hash(again));
  EXPECT_EQ(emit_config(cfg), emit_config(again));
}

TEST(Config, HashIgnoresKeyOrderAndTracksValues) {
  const auto a = parse_config_text("experiment: phase-sweep\nphase_sweep:\n  cells: 1800\n  eps_reg: 1e-8\n");
  const auto b = parse_config_text("phase_sweep:\n  eps_reg: 1.0e-8\n  cells: 1800\nexperiment: phase-sweep\n");
  const auto c = parse_config_text("experiment: phase-sweep\nphase_sweep:\n  cells: 1801\n  eps_reg: 1e-8\n");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 64u);
}

TEST(Config, FwhmAndSigmaAreMutuallyExclusive) {
  const auto cfg = parse_config_text("experiment: ghost-scan\nghost_scan:\n  packet: {fwhm: 11.774100225154747}\n");
  EXPECT_NEAR(cfg.ghost.sigma_omega, 5.0, 1e-9);
  EXPECT_FALSE(
      error_of("experiment: ghost-scan\nghost_scan:\n  packet: {fwhm: 10, sigma_omega: 4}\n").empty());
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(parse_config("/nonexistent/dir/run.yaml"), IoError);
}
