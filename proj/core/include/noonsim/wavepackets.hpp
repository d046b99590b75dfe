#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "noonsim/detector.hpp"
#include "noonsim/grid.hpp"
#include "noonsim/mode_basis.hpp"

namespace noonsim {

/// Gaussian quasi-monochromatic packet. Widths are intensity standard deviations; the
/// longitudinal one follows from the amplitude spectral width as sigma_x = 1/(2 sigma_omega).
struct WavepacketSpec {
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> direction{1.0, 0.0};
  double center_frequency = 0.0;
  double spectral_std = 0.0;
  double transverse_std = 0.0;  // ignored in 1D

  [[nodiscard]] double spatial_std() const { return 0.5 / spectral_std; }
};

/// Throws ConfigError / GeometryError if the packet is not quasi-monochromatic or its 4-sigma
/// envelope does not fit in half the periodic box along each axis.
void validate_packet(const WavepacketSpec& spec, const Grid& grid);

/// Samples psi(r) at every cell centre, using minimum-image displacements from the centre.
Eigen::VectorXcd packet_profile(const WavepacketSpec& spec, const Grid& grid);

/// Unit-norm complex amplitudes over the retained modes of one basis.
class SpectralAmplitudes {
 public:
  SpectralAmplitudes() = default;
  /// Normalizes `g`; throws EmptyProjectionError if its norm is below 1e-12.
  explicit SpectralAmplitudes(Eigen::VectorXcd g);

  [[nodiscard]] const Eigen::VectorXcd& values() const noexcept { return g_; }
  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(g_.size()); }
  [[nodiscard]] std::complex<double> operator[](std::size_t i) const {
    return g_[static_cast<Eigen::Index>(i)];
  }

  /// Same amplitudes times a common phase factor.
  [[nodiscard]] SpectralAmplitudes phased(std::complex<double> unit) const;

 private:
  Eigen::VectorXcd g_;
};

struct Projection {
  SpectralAmplitudes amplitudes;
  /// Fraction of the eps-weighted norm of the profile carried by the retained modes.
  double capture_fraction = 0.0;
};

/// raw_i = sum_j eps_j conj(Phi_ij) psi_j dV, then normalized.
Projection project_packet(const ModeBasis& basis, const Eigen::VectorXcd& profile);

/// Real-space field sum_i g_i Phi_i.
Eigen::VectorXcd reconstruct(const ModeBasis& basis, const SpectralAmplitudes& g);

/// gamma = sum_i conj(a_i) b_i.
std::complex<double> overlap(const SpectralAmplitudes& a, const SpectralAmplitudes& b);

/// alpha = sum_i c_i(r_det, t_det) g_i.
std::complex<double> detector_amplitude(const ModeBasis& basis, const SpectralAmplitudes& g,
                                        const DetectorSpec& det);

/// Detector amplitudes at many cells sharing one detection time.
Eigen::VectorXcd detector_amplitudes(const ModeBasis& basis, const SpectralAmplitudes& g,
                                     std::span<const std::size_t> cells, double time);

/// Two-branch N00N input (|N,0> + e^{iN theta}|0,N>)/sqrt(2) with branch wavepackets g_left
/// and g_right. N must be even and positive.
struct NoonStateSpec {
  int photons = 2;
  SpectralAmplitudes left;
  SpectralAmplitudes right;
  double theta = 0.0;
};

void validate_state(const NoonStateSpec& state);

/// Coherent input whose mean positive-frequency field at a detector is
/// sqrt(n) (e^{i theta} alpha_left + alpha_right).
struct CoherentStateSpec {
  double mean_photon_number = 1.0;
  SpectralAmplitudes left;
  SpectralAmplitudes right;
  double theta = 0.0;
};

}  // namespace noonsim
