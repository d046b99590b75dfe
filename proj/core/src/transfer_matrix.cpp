#include "noonsim/transfer_matrix.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {

double slab_transmission(double omega, double eps, double thickness) {
  using cd = std::complex<double>;
  const double n = std::sqrt(eps);
  const double delta = n * omega * thickness;
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  // Characteristic matrix [[cos, -i sin / n], [-i n sin, cos]] between vacuum half-spaces.
  const cd m11{c, 0.0};
  const cd m12{0.0, -s / n};
  const cd m21{0.0, -n * s};
  const cd m22{c, 0.0};
  const cd t = 2.0 / (m11 + m12 + m21 + m22);
  return std::norm(t);
}

double calibrate_beamsplitter(double omega, double eps) {
  if (!(omega > 0.0)) throw ConfigError("beamsplitter omega must be > 0");
  if (!(eps >= 1.0) || !std::isfinite(eps)) throw ConfigError("beamsplitter eps must be >= 1");
  const double half_wave = std::numbers::pi / omega;
  auto f = [&](double d) { return slab_transmission(omega, eps, d) - 0.5; };

  constexpr int kScan = 4096;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  double prev = f(0.0);
  for (int k = 1; k < kScan; ++k) {
    const double d = half_wave * k / kScan;
    const double cur = f(d);
    if ((prev > 0.0) != (cur > 0.0)) {
      lo = half_wave * (k - 1) / kScan;
      hi = d;
      found = true;
      break;
    }
    prev = cur;
  }
  if (!found) {
    throw CalibrationError("slab of eps " + std::to_string(eps) +
                           " never reaches 50:50 transmission below half a wavelength");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == (f(lo) > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace noonsim
