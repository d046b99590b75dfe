#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "noonsim/error.hpp"
#include "noonsim/experiments.hpp"

namespace noonsim {

double estimate_fringe_period(std::span<const double> theta, std::span<const double> values) {
  const std::size_t n = values.size();
  if (theta.size() != n) throw DimensionMismatchError("theta and values differ in length");
  if (n < 8) throw NoFringeError("fringe estimation needs at least 8 samples");
  const double step = theta[1] - theta[0];
  if (!(step > 0.0)) throw ConfigError("theta samples must increase");
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(theta[k] - theta[k - 1] - step) > 1e-9 * std::abs(step) * n) {
      throw ConfigError("theta samples must be uniformly spaced");
    }
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  if (!(*hi - *lo >= 1e-9 * scale) || scale == 0.0) {
    throw NoFringeError("series is flat, no fringe to measure");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  const std::size_t kmax = n / 2;
  std::vector<double> mag(kmax + 1, 0.0);
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) /
                           static_cast<double>(n);
      acc += (values[j] - mean) * std::polar(1.0, phase);
    }
    mag[k] = std::abs(acc);
  }
  std::size_t peak = 1;
  for (std::size_t k = 2; k <= kmax; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  double shift = 0.0;
  if (peak < kmax) {
    const double a = mag[peak - 1];
    const double b = mag[peak];
    const double c = mag[peak + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) shift = 0.5 * (a - c) / denom;
  }
  const double span = step * static_cast<double>(n);
  return span / (static_cast<double>(peak) + shift);
}

double edge_sharpness(std::span<const double> s, std::span<const double> values) {
  const std::size_t n = values.size();
  if (s.size() != n) throw DimensionMismatchError("s and values differ in length");
  if (n < 5) throw NoTransitionError("edge sharpness needs at least 5 samples");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(hi)))) {
    throw NoTransitionError("series is flat, no transition");
  }
  auto imin = static_cast<std::size_t>(lo_it - values.begin());
  auto imax = static_cast<std::size_t>(hi_it - values.begin());

  // Walk from the minimum towards the maximum so the transition always rises.
  std::vector<double> x;
  std::vector<double> c;
  if (imin < imax) {
    for (std::size_t k = imin; k <= imax; ++k) {
      x.push_back(s[k]);
      c.push_back((values[k] - lo) / (hi - lo));
    }
  } else {
    for (std::size_t k = imin + 1; k-- > imax;) {
      x.push_back(s[k]);
      c.push_back((values[k] - lo) / (hi - lo));
    }
  }
  std::size_t k90 = 0;
  while (k90 < c.size() && c[k90] < 0.9) ++k90;
  std::size_t k10 = k90;
  while (k10 > 0 && c[k10 - 1] > 0.1) --k10;
  if (k90 == 0 || k10 == 0) throw NoTransitionError("no 10-90 % crossing found");
  // Rising crossings lie in the intervals [k10-1, k10] and [k90-1, k90].
  auto cross = [&](std::size_t hi_idx, double level) {
    const std::size_t a = hi_idx - 1;
    const double t = (level - c[a]) / (c[hi_idx] - c[a]);
    return x[a] + t * (x[hi_idx] - x[a]);
  };
  if (k10 == k90) return std::abs(x[k90] - x[k90 - 1]);
  return std::abs(cross(k90, 0.9) - cross(k10, 0.1));
}

}  // namespace noonsim
