#include "noonsim/correlation.hpp"

#include <array>
#include <cmath>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {

namespace {

using cd = std::complex<double>;

struct WickSum {
  cd value{0.0, 0.0};
  double magnitude = 0.0;  // sum of |term|, bounds round-off in `value`
};

// Pairs the leftmost unpaired form; a creation there has nothing to its left and kills the term.
void enumerate(const std::vector<std::vector<cd>>& contraction,
               const std::vector<LadderKind>& kinds, unsigned used, cd product, WickSum& out) {
  const auto n = kinds.size();
  std::size_t first = 0;
  while (first < n && (used & (1u << first))) ++first;
  if (first == n) {
    out.value += product;
    out.magnitude += std::abs(product);
    return;
  }
  if (kinds[first] == LadderKind::creation) return;
  for (std::size_t j = first + 1; j < n; ++j) {
    if ((used & (1u << j)) || kinds[j] != LadderKind::creation) continue;
    enumerate(contraction, kinds, used | (1u << first) | (1u << j),
              product * contraction[first][j], out);
  }
}

WickSum wick_sum(std::span<const LadderForm> ops) {
  if (ops.size() > kOracleMaxForms) {
    throw OracleSizeError("vacuum_expectation supports at most " +
                          std::to_string(kOracleMaxForms) + " ladder forms, got " +
                          std::to_string(ops.size()));
  }
  std::size_t creations = 0;
  for (const auto& f : ops) {
    if (f.kind == LadderKind::creation) ++creations;
    if (f.coeffs.size() != ops.front().coeffs.size()) {
      throw DimensionMismatchError("ladder forms over different mode counts");
    }
  }
  WickSum out;
  if (2 * creations != ops.size()) return out;
  std::vector<std::vector<cd>> contraction(ops.size(), std::vector<cd>(ops.size()));
  std::vector<LadderKind> kinds(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    kinds[i] = ops[i].kind;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      contraction[i][j] = (ops[i].coeffs.array() * ops[j].coeffs.array()).sum();
    }
  }
  enumerate(contraction, kinds, 0u, cd{1.0, 0.0}, out);
  return out;
}

double real_part(const WickSum& w, const char* what) {
  const double tol = 1e-10 * std::max(std::abs(w.value), w.magnitude * 1e-6);
  if (std::abs(w.value.imag()) > tol && std::abs(w.value.imag()) > 1e-300) {
    throw NumericalError(std::string(what) + " has imaginary residue " +
                         std::to_string(w.value.imag()));
  }
  return w.value.real();
}

cd ipow(cd z, int k) {
  cd r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_folds(const NoonStateSpec& state, const DetectorSpec& a, const DetectorSpec& b) {
  validate_state(state);
  const int p = state.photons / 2;
  if (a.fold != p || b.fold != p) {
    throw ConfigError("detector fold must be N/2 = " + std::to_string(p) + " at both detectors");
  }
}

}  // namespace

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::complex<double> vacuum_expectation(std::span<const LadderForm> ops) {
  return wick_sum(ops).value;
}

void apply_regularization(CFComponents& cf, const Regularization& reg) {
  const bool num_dark = cf.numerator < reg.eps * reg.alpha_scale * reg.beta_scale;
  const bool den_dark =
      cf.denom_alpha < reg.eps * reg.alpha_scale || cf.denom_beta < reg.eps * reg.beta_scale;
  if (den_dark && num_dark) {
    cf.value = 1.0;
    cf.regularized = true;
    return;
  }
  if (den_dark) {
    throw IndeterminateCfError("detector denominator vanishes (alpha " +
                               std::to_string(cf.denom_alpha) + ", beta " +
                               std::to_string(cf.denom_beta) + ") while numerator is " +
                               std::to_string(cf.numerator));
  }
  cf.regularized = false;
  cf.value = cf.numerator * cf.state_norm / (cf.denom_alpha * cf.denom_beta);
}

CFComponents noon_cf_terms(int photons, double theta, std::complex<double> gamma,
                           std::span<const BranchAmplitudes> alpha_cells,
                           const BranchAmplitudes& beta, const Regularization& reg) {
  if (photons <= 0 || photons % 2 != 0) {
    throw ConfigError("N00N photon number must be even and positive");
  }
  const int n = photons;
  const int p = n / 2;
  const cd phase = std::polar(1.0, n * theta);
  const cd gp = ipow(std::conj(gamma), p);
  const double nf = factorial(n);
  const double den_pref = nf / (2.0 * factorial(p));

  auto denom = [&](const BranchAmplitudes& a) {
    const double cross = (phase * ipow(std::conj(a.right), p) * ipow(a.left, p) * gp).real();
    return den_pref * (ipow(std::norm(a.left), p) + ipow(std::norm(a.right), p) + 2.0 * cross);
  };

  CFComponents cf;
  const cd beta_l = ipow(beta.left, p);
  const cd beta_r = ipow(beta.right, p);
  for (const auto& a : alpha_cells) {
    cf.numerator += 0.5 * nf * std::norm(phase * ipow(a.left, p) * beta_l + ipow(a.right, p) * beta_r);
    cf.denom_alpha += denom(a);
  }
  cf.denom_beta = denom(beta);
  cf.state_norm = 1.0 + (phase * ipow(std::conj(gamma), n)).real();
  if (!(cf.state_norm > 0.0)) throw NumericalError("N00N state has vanishing norm");
  apply_regularization(cf, reg);
  return cf;
}

CFComponents noon_cf(const ModeBasis& basis, const NoonStateSpec& state,
                     const DetectorSpec& det_alpha, const DetectorSpec& det_beta,
                     const Regularization& reg) {
  check_folds(state, det_alpha, det_beta);
  const BranchAmplitudes a{detector_amplitude(basis, state.left, det_alpha),
                           detector_amplitude(basis, state.right, det_alpha)};
  const BranchAmplitudes b{detector_amplitude(basis, state.left, det_beta),
                           detector_amplitude(basis, state.right, det_beta)};
  return noon_cf_terms(state.photons, state.theta, overlap(state.left, state.right),
                       std::span(&a, 1), b, reg);
}

CFComponents noon_cf_bucket(const ModeBasis& basis, const NoonStateSpec& state,
                            std::span<const std::size_t> bucket_cells, double bucket_time,
                            const DetectorSpec& det_beta, const Regularization& reg) {
  validate_state(state);
  if (det_beta.fold != state.photons / 2) throw ConfigError("detector fold must be N/2");
  if (bucket_cells.empty()) throw ConfigError("bucket detector needs at least one cell");
  const Eigen::VectorXcd al = detector_amplitudes(basis, state.left, bucket_cells, bucket_time);
  const Eigen::VectorXcd ar = detector_amplitudes(basis, state.right, bucket_cells, bucket_time);
  std::vector<BranchAmplitudes> cells(bucket_cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    cells[k] = {al[static_cast<Eigen::Index>(k)], ar[static_cast<Eigen::Index>(k)]};
  }
  const BranchAmplitudes b{detector_amplitude(basis, state.left, det_beta),
                           detector_amplitude(basis, state.right, det_beta)};
  return noon_cf_terms(state.photons, state.theta, overlap(state.left, state.right), cells, b,
                       reg);
}

CFComponents noon_cf_oracle(const ModeBasis& basis, const NoonStateSpec& state,
                            const DetectorSpec& det_alpha, const DetectorSpec& det_beta,
                            const Regularization& reg) {
  check_folds(state, det_alpha, det_beta);
  const int n = state.photons;
  const int p = n / 2;
  if (n > 4) throw OracleSizeError("noon_cf_oracle supports N <= 4");

  const cd shift = std::polar(1.0, state.theta);
  // Branch creation operator coefficients; the phase shifter acts on the left branch.
  const std::array<Eigen::VectorXcd, 2> ket{state.left.values() * shift, state.right.values()};
  const Eigen::VectorXcd ca = basis.field_coefficients(det_alpha.cell_index, det_alpha.time);
  const Eigen::VectorXcd cb = basis.field_coefficients(det_beta.cell_index, det_beta.time);

  auto repeat = [](std::vector<LadderForm>& seq, LadderKind kind, const Eigen::VectorXcd& c,
                   int times) {
    for (int i = 0; i < times; ++i) seq.push_back({kind, c});
  };
  using Middle = std::vector<std::pair<LadderKind, Eigen::VectorXcd>>;
  // <psi| middle |psi> summed over both branches of bra and ket.
  auto sandwich = [&](const Middle& middle, const char* what) {
    WickSum total;
    for (const auto& x : ket) {
      for (const auto& y : ket) {
        std::vector<LadderForm> seq;
        repeat(seq, LadderKind::annihilation, x.conjugate(), n);
        for (const auto& [kind, c] : middle) seq.push_back({kind, c});
        repeat(seq, LadderKind::creation, y, n);
        const WickSum w = wick_sum(seq);
        total.value += w.value;
        total.magnitude += w.magnitude;
      }
    }
    const double scale = 1.0 / (2.0 * factorial(n));
    total.value *= scale;
    total.magnitude *= scale;
    return real_part(total, what);
  };

  Middle num;
  Middle da;
  Middle db;
  for (int i = 0; i < p; ++i) num.emplace_back(LadderKind::creation, ca.conjugate());
  for (int i = 0; i < p; ++i) num.emplace_back(LadderKind::creation, cb.conjugate());
  for (int i = 0; i < p; ++i) num.emplace_back(LadderKind::annihilation, cb);
  for (int i = 0; i < p; ++i) num.emplace_back(LadderKind::annihilation, ca);
  for (int i = 0; i < p; ++i) da.emplace_back(LadderKind::creation, ca.conjugate());
  for (int i = 0; i < p; ++i) da.emplace_back(LadderKind::annihilation, ca);
  for (int i = 0; i < p; ++i) db.emplace_back(LadderKind::creation, cb.conjugate());
  for (int i = 0; i < p; ++i) db.emplace_back(LadderKind::annihilation, cb);

  CFComponents cf;
  cf.numerator = sandwich(num, "numerator");
  cf.denom_alpha = sandwich(da, "alpha denominator");
  cf.denom_beta = sandwich(db, "beta denominator");
  cf.state_norm = sandwich({}, "state norm");
  apply_regularization(cf, reg);
  return cf;
}

double coherent_baseline(const ModeBasis& basis, const CoherentStateSpec& state,
                         const DetectorSpec& det) {
  if (!(state.mean_photon_number > 0.0)) throw ConfigError("mean photon number must be > 0");
  const cd al = detector_amplitude(basis, state.left, det);
  const cd ar = detector_amplitude(basis, state.right, det);
  return state.mean_photon_number * std::norm(std::polar(1.0, state.theta) * al + ar);
}

}  // namespace noonsim
