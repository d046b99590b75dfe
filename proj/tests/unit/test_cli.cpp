#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "noonsim/config.hpp"
#include "noonsim/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = NOONSIM_TEST_DATA_DIR;

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + NOONSIM_CLI_PATH + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "noonsim_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

}  // namespace

TEST(Cli, VersionAndEffectiveConfig) {
  const auto dir = fresh_dir("version");
  fs::create_directories(dir);
  EXPECT_EQ(run_cli("--version", dir / "v.txt"), 0);
  EXPECT_NE(noonsim::read_file(dir / "v.txt").find("0."), std::string::npos);
  EXPECT_EQ(run_cli("--config \"" + (kData / "small_phase.yaml").string() + "\" --print-config",
                    dir / "cfg.yaml"),
            0);
  const auto cfg = noonsim::parse_config(dir / "cfg.yaml");
  EXPECT_EQ(cfg.phase.cells, 1200);
}

TEST(Cli, UnknownKeyExitsWithConfigCode) {
  const auto dir = fresh_dir("unknown");
  fs::create_directories(dir);
  EXPECT_EQ(run_cli("--config \"" + (kData / "unknown_key.yaml").string() + "\"", dir / "log"), 2);
  EXPECT_NE(noonsim::read_file(dir / "log").find("phase_sweep.cellz"), std::string::npos);
}

TEST(Cli, BadFlagExitsWithConfigCode) {
  const auto dir = fresh_dir("flag");
  fs::create_directories(dir);
  EXPECT_EQ(run_cli("phase-sweep --no-such-flag", dir / "log"), 2);
}

TEST(Cli, MissingConfigFileExitsWithIoCode) {
  const auto dir = fresh_dir("missing");
  fs::create_directories(dir);
  EXPECT_EQ(run_cli("--config /nonexistent/run.yaml phase-sweep", dir / "log"), 4);
}

TEST(Cli, UnwritableOutputExitsWithIoCode) {
  const auto dir = fresh_dir("unwritable");
  fs::create_directories(dir);
  noonsim::write_file(dir / "file", "x");
  EXPECT_EQ(run_cli("oracle-check --out \"" + (dir / "file" / "sub").string() + "\"", dir / "log"),
            4);
}

TEST(Cli, UncalibratableSplitterExitsWithNumericalCode) {
  const auto dir = fresh_dir("numerical");
  fs::create_directories(dir);
  EXPECT_EQ(run_cli("--config \"" + (kData / "weak_splitter.yaml").string() + "\" --out \"" +
                        (dir / "out").string() + "\"",
                    dir / "log"),
            3);
  EXPECT_NE(noonsim::read_file(dir / "log").find("error [phase-sweep]"), std::string::npos);
}

TEST(Cli, OracleCheckWritesReport) {
  const auto dir = fresh_dir("oracle");
  ASSERT_EQ(run_cli("oracle-check --out \"" + dir.string() + "\"", fs::temp_directory_path() / "noonsim_cli_test" / "oracle.log"), 0);
  EXPECT_TRUE(fs::exists(dir / "oracle_report.json"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST(Cli, PhaseSweepCsvsAreByteIdenticalAcrossRuns) {
  const auto a = fresh_dir("phase_a");
  const auto b = fresh_dir("phase_b");
  const std::string cfg = "--config \"" + (kData / "small_phase.yaml").string() + "\"";
  ASSERT_EQ(run_cli(cfg + " --out \"" + a.string() + "\"", a.string() + ".log"), 0);
  ASSERT_EQ(run_cli(cfg + " --out \"" + b.string() + "\"", b.string() + ".log"), 0);
  for (const char* f : {"result_phase-sweep.csv", "components_phase-sweep.csv"}) {
    EXPECT_EQ(noonsim::read_file(a / f), noonsim::read_file(b / f)) << f;
  }
}

TEST(Cli, GhostScanWritesOneCsvPerPerturbationDeterministically) {
  const auto a = fresh_dir("ghost_a");
  const auto b = fresh_dir("ghost_b");
  const std::string cfg = "--config \"" + (kData / "small_ghost.yaml").string() + "\"";
  ASSERT_EQ(run_cli(cfg + " --out \"" + a.string() + "\"", a.string() + ".log"), 0);
  ASSERT_EQ(run_cli(cfg + " --out \"" + b.string() + "\"", b.string() + ".log"), 0);
  for (const char* label : {"m10", "0", "p10"}) {
    const std::string f = std::string("result_ghost-scan_") + label + ".csv";
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(noonsim::read_file(a / f), noonsim::read_file(b / f)) << f;
  }
}

TEST(Cli, ModesDumpsSpectrum) {
  const auto dir = fresh_dir("modes");
  ASSERT_EQ(run_cli("modes --out \"" + dir.string() + "\"", dir.string() + ".log"), 0);
  const auto rows = noonsim::parse_csv(noonsim::read_file(dir / "omegas.csv"));
  EXPECT_EQ(rows.size(), 64u);
  EXPECT_TRUE(fs::exists(dir / "permittivity.csv"));
}
