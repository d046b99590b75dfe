#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "noonsim/error.hpp"
#include "noonsim/io.hpp"
#include "test_support.hpp"

using namespace noonsim;
namespace fs = std::filesystem;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n') + 1); }

SweepResult phase_like(std::size_t m) {
  SweepResult r;
  r.variable = "theta";
  for (int n : {2, 4, 6}) {
    SweepSeries s;
    s.photons = n;
    for (std::size_t k = 0; k < m; ++k) {
      s.points.push_back(CFComponents{0.5 * k, 1.0, 2.0, 1.0, 0.25 * k, false});
      s.raw.push_back(0.25 * static_cast<double>(k));
      s.normalized.push_back(m > 1 ? static_cast<double>(k) / static_cast<double>(m - 1) : 0.0);
    }
    r.series.push_back(s);
  }
  for (std::size_t k = 0; k < m; ++k) {
    r.x.push_back(0.1 * static_cast<double>(k));
    r.classical_norm.push_back(1.0 / 3.0);
  }
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "noonsim_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Csv, PhaseHeaderMatchesGoldenFile) {
  const auto golden = read_file(fs::path(NOONSIM_TEST_DATA_DIR) / "golden_phase_header.csv");
  EXPECT_EQ(first_line(sweep_csv(phase_like(3))), golden);
  EXPECT_EQ(golden, "theta,cf_N2,cf_N2_norm,cf_N4,cf_N4_norm,cf_N6,cf_N6_norm,classical_norm\n");
}

TEST(Csv, GhostHeaderMatchesGoldenFile) {
  SweepResult r;
  r.variable = "s";
  for (int n : {2, 4, 8}) r.series.push_back(SweepSeries{n, {}, {}, {}});
  const auto golden = read_file(fs::path(NOONSIM_TEST_DATA_DIR) / "golden_ghost_header.csv");
  EXPECT_EQ(first_line(sweep_csv(r)), golden);
}

TEST(Csv, ComponentsHeaderMatchesGoldenFile) {
  const auto golden = read_file(fs::path(NOONSIM_TEST_DATA_DIR) / "golden_components_header.csv");
  EXPECT_EQ(first_line(components_csv(phase_like(2))), golden);
}

TEST(Csv, EmptySweepIsHeaderOnly) {
  const auto text = sweep_csv(phase_like(0));
  EXPECT_EQ(text, first_line(text));
  EXPECT_EQ(parse_csv(text).size(), 1u);
}

TEST(Csv, ValuesRoundTripExactly) {
  auto r = phase_like(5);
  r.series[1].raw[3] = 0.1 + 0.2;
  r.classical_norm[2] = std::nextafter(1.0, 0.0);
  const auto path = scratch("sweep.csv");
  emit_csv(r, path);
  const auto rows = parse_csv(read_file(path));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(parse_double(rows[4][3]), r.series[1].raw[3]);
  EXPECT_EQ(parse_double(rows[3][7]), r.classical_norm[2]);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(parse_double(rows[k + 1][0]), r.x[k]);
}

TEST(Csv, RejectsRaggedColumns) {
  auto r = phase_like(4);
  r.series[0].raw.pop_back();
  EXPECT_THROW(sweep_csv(r), DimensionMismatchError);
}

TEST(Csv, NumberFormatIgnoresGlobalLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) std::setlocale(LC_NUMERIC, "C");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(parse_double("0.25"), 0.25);
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_EQ(format_double_shortest(0.1), "0.1");
}

TEST(Csv, PermittivityMapRoundTrips) {
  const Grid g = Grid::centered_plane({8, 9}, {0.8, 0.9});
  PermittivityMap map(g);
  map.set(g.flat_index(2, 3), 4.0);
  map.set(g.flat_index(7, 8), 2.25);
  const auto path = scratch("eps.csv");
  write_file(path, permittivity_csv(map));
  EXPECT_EQ(first_line(read_file(path)), "eps2d,8,9\n");
  const auto back = read_permittivity_csv(path, {0.1, 0.1});
  EXPECT_EQ(back.values(), map.values());
  EXPECT_EQ(back.grid(), g);
}

TEST(Csv, PermittivityReaderRejectsBadFiles) {
  const auto path = scratch("bad_eps.csv");
  write_file(path, "eps1d,8\n1,1,1\n");
  EXPECT_THROW(read_permittivity_csv(path, {0.1, 0.1}), ConfigError);
  EXPECT_THROW(read_permittivity_csv(scratch("missing.csv"), {0.1, 0.1}), IoError);
}

TEST(Csv, BasisAndAmplitudeDumps) {
  const auto basis = test_util::uniform_line_basis(8, 1.0);
  const auto om = parse_csv(omegas_csv(basis));
  ASSERT_EQ(om.size(), 8u);
  EXPECT_EQ(om[0], (std::vector<std::string>{"index", "omega"}));
  EXPECT_EQ(parse_double(om[1][1]), basis.omegas()[0]);
  const auto modes = parse_csv(modes_csv(basis));
  EXPECT_EQ(modes[0], (std::vector<std::string>{"cell", "mode", "re", "im"}));
  EXPECT_EQ(modes.size(), 1u + 8u * 7u);
  const SpectralAmplitudes g(Eigen::VectorXcd::Ones(3));
  const auto amps = parse_csv(amplitudes_csv(g));
  EXPECT_EQ(amps[0], (std::vector<std::string>{"index", "re", "im"}));
  EXPECT_EQ(amps.size(), 4u);
}

TEST(Files, UnwritableOrMissingPathIsIoError) {
  const auto dir = std::filesystem::temp_directory_path() / "noonsim_io_test";
  std::filesystem::create_directories(dir);
  const auto blocker = dir / "plain_file";
  write_file(blocker, "x");
  EXPECT_THROW(write_file(blocker / "x.csv", "a"), IoError);
  EXPECT_THROW(read_file(dir / "does_not_exist.csv"), IoError);
  std::filesystem::remove_all(dir);
}
