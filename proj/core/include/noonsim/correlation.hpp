#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "noonsim/detector.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim {

enum class LadderKind { creation, annihilation };

/// Linear combination sum_i coeffs_i a_i (annihilation) or sum_i coeffs_i a_i^dagger
/// (creation). Coefficients multiply the raw operators; any conjugation is applied by the
/// caller when building the form.
struct LadderForm {
  LadderKind kind = LadderKind::annihilation;
  Eigen::VectorXcd coeffs;
};

inline constexpr std::size_t kOracleMaxForms = 16;

/// <0| F_1 F_2 ... F_n |0> by explicit enumeration of full contractions. Each annihilation
/// pairs with a creation to its right and contributes sum_i u_i v_i.
std::complex<double> vacuum_expectation(std::span<const LadderForm> ops);

/// Terms of the normalized N-th order coincidence ratio at two detectors.
struct CFComponents {
  double numerator = 0.0;
  double denom_alpha = 0.0;
  double denom_beta = 0.0;
  double state_norm = 1.0;
  double value = 0.0;
  bool regularized = false;
};

/// Thresholds for the zero-over-zero convention. A denominator is "dark" below eps times its
/// scale; the numerator is dark below eps * alpha_scale * beta_scale. Scales default to 1 for
/// single-point evaluation; sweeps pass the peak single-detector responses.
struct Regularization {
  double eps = 1e-9;
  double alpha_scale = 1.0;
  double beta_scale = 1.0;
};

/// Recomputes `value` and `regularized` from the raw terms. Returns value 1 with the flag set
/// when the numerator and a denominator are both dark; throws IndeterminateCfError when a
/// denominator is dark but the numerator is not.
void apply_regularization(CFComponents& cf, const Regularization& reg);

/// Positive-frequency amplitudes of the two branch packets at one detector cell.
struct BranchAmplitudes {
  std::complex<double> left;
  std::complex<double> right;
};

/// Closed-form terms for an N00N input given detector amplitudes. `alpha_cells` lists every
/// cell of detector alpha; numerator and denom_alpha are summed over them incoherently.
CFComponents noon_cf_terms(int photons, double theta, std::complex<double> gamma,
                           std::span<const BranchAmplitudes> alpha_cells,
                           const BranchAmplitudes& beta, const Regularization& reg);

CFComponents noon_cf(const ModeBasis& basis, const NoonStateSpec& state,
                     const DetectorSpec& det_alpha, const DetectorSpec& det_beta,
                     const Regularization& reg = {});

/// Same as noon_cf with detector alpha a bucket of cells sampled at one time.
CFComponents noon_cf_bucket(const ModeBasis& basis, const NoonStateSpec& state,
                            std::span<const std::size_t> bucket_cells, double bucket_time,
                            const DetectorSpec& det_beta, const Regularization& reg = {});

/// Reference evaluation: expands the state into its branches and evaluates every expectation
/// value with vacuum_expectation. Limited to N <= 4.
CFComponents noon_cf_oracle(const ModeBasis& basis, const NoonStateSpec& state,
                            const DetectorSpec& det_alpha, const DetectorSpec& det_beta,
                            const Regularization& reg = {});

/// Single-detector intensity n |e^{i theta} alpha_L + alpha_R|^2 of a coherent input.
double coherent_baseline(const ModeBasis& basis, const CoherentStateSpec& state,
                         const DetectorSpec& det);

double factorial(int n);

}  // namespace noonsim
