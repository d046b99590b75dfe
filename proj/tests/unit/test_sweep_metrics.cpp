#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "noonsim/error.hpp"
#include "noonsim/experiments.hpp"

using namespace noonsim;

namespace {

std::vector<double> theta_grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n;
  return t;
}

}  // namespace

TEST(FringePeriod, RecoversHarmonicPeriod) {
  const auto t = theta_grid(192);
  for (int n : {1, 2, 4, 6, 8}) {
    std::vector<double> y;
    for (double x : t) y.push_back(1.0 + 0.8 * std::cos(n * x + 0.4));
    EXPECT_NEAR(estimate_fringe_period(t, y), 2.0 * std::numbers::pi / n, 1e-9) << n;
  }
}

TEST(FringePeriod, InterpolatesNonIntegerHarmonics) {
  std::vector<double> t;
  std::vector<double> y;
  for (int k = 0; k < 400; ++k) {
    t.push_back(0.05 * k);
    y.push_back(std::cos(2.0 * std::numbers::pi * t.back() / 1.37));
  }
  EXPECT_NEAR(estimate_fringe_period(t, y), 1.37, 0.02 * 1.37);
}

TEST(FringePeriod, RejectsFlatAndShortSeries) {
  const auto t = theta_grid(32);
  EXPECT_THROW(estimate_fringe_period(t, std::vector<double>(32, 1.0)), NoFringeError);
  EXPECT_THROW(estimate_fringe_period(theta_grid(4), std::vector<double>{1, 2, 1, 2}),
               NoFringeError);
  EXPECT_THROW(estimate_fringe_period(t, std::vector<double>(31, 1.0)), DimensionMismatchError);
}

TEST(EdgeSharpness, LogisticEdgeWidthIsWidthTimesLn81) {
  const double w = 0.02;
  for (double sign : {1.0, -1.0}) {
    std::vector<double> s;
    std::vector<double> y;
    for (int k = 0; k <= 2000; ++k) {
      s.push_back(-0.5 + 0.0005 * k);
      y.push_back(1.0 / (1.0 + std::exp(-sign * (s.back() - 0.1) / w)));
    }
    EXPECT_NEAR(edge_sharpness(s, y), w * std::log(81.0), 1e-4) << sign;
  }
}

TEST(EdgeSharpness, StepWithinOneIntervalReturnsSpacing) {
  const std::vector<double> s{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<double> y{0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
  EXPECT_NEAR(edge_sharpness(s, y), 0.1, 1e-15);
}

TEST(EdgeSharpness, LinearRampUsesInterpolatedCrossings) {
  std::vector<double> s;
  std::vector<double> y;
  for (int k = 0; k <= 10; ++k) {
    s.push_back(k);
    y.push_back(k);
  }
  EXPECT_NEAR(edge_sharpness(s, y), 8.0, 1e-12);
}

TEST(EdgeSharpness, RejectsFlatSeries) {
  const std::vector<double> s{0, 1, 2, 3, 4, 5};
  EXPECT_THROW(edge_sharpness(s, std::vector<double>(6, 0.5)), NoTransitionError);
}
