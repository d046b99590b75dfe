#include "experiments_common.hpp"

#include <cmath>
#include <sstream>

#include "noonsim/error.hpp"

namespace noonsim::detail {

void check_capture(double fraction, const std::string& label, SweepMetadata& meta) {
  auto it = std::find_if(meta.capture_fractions.begin(), meta.capture_fractions.end(),
                         [&](const auto& kv) { return kv.first == label; });
  if (it == meta.capture_fractions.end()) {
    meta.capture_fractions.emplace_back(label, fraction);
  } else {
    it->second = std::min(it->second, fraction);
  }
  if (fraction < kCaptureMin) {
    throw CaptureError("packet '" + label + "' capture fraction " + std::to_string(fraction) +
                       " is below " + std::to_string(kCaptureMin));
  }
  if (fraction < kCaptureWarn) {
    std::ostringstream os;
    os << "packet '" << label << "' capture fraction " << fraction << " is below "
       << kCaptureWarn;
    meta.warnings.push_back(os.str());
  }
}

std::vector<double> normalized_to_peak(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, x);
  std::vector<double> out(v);
  if (peak > 0.0) {
    for (double& x : out) x /= peak;
  }
  return out;
}

void finalize_series(SweepSeries& series, double eps_reg, const std::string& variable,
                     const std::vector<double>& x) {
  double peak_a = 0.0;
  double peak_b = 0.0;
  for (const auto& p : series.points) {
    peak_a = std::max(peak_a, p.denom_alpha);
    peak_b = std::max(peak_b, p.denom_beta);
  }
  const Regularization reg{eps_reg, peak_a > 0.0 ? peak_a : 1.0, peak_b > 0.0 ? peak_b : 1.0};
  series.raw.resize(series.points.size());
  for (std::size_t k = 0; k < series.points.size(); ++k) {
    try {
      apply_regularization(series.points[k], reg);
    } catch (const IndeterminateCfError& e) {
      std::ostringstream os;
      os << "N = " << series.photons << ", point " << k << " (" << variable << " = " << x[k]
         << "): " << e.what();
      throw IndeterminateCfError(os.str());
    }
    series.raw[k] = series.points[k].value;
  }
  series.normalized = normalized_to_peak(series.raw);
}

}  // namespace noonsim::detail
