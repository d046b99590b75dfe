#include "noonsim/wavepackets.hpp"

#include <cmath>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {

namespace {

void check_cell(const ModeBasis& basis, std::size_t cell) {
  if (cell >= basis.dof_count()) {
    throw std::out_of_range("detector cell " + std::to_string(cell) + " outside grid");
  }
}

void check_size(const ModeBasis& basis, const SpectralAmplitudes& g) {
  if (g.size() != basis.kept_count()) {
    throw DimensionMismatchError("amplitudes have " + std::to_string(g.size()) +
                                 " entries for a basis of " +
                                 std::to_string(basis.kept_count()) + " modes");
  }
}

// g_i / sqrt(2 w_i) e^{-i w_i t}: the time-dependent part shared by every detector cell.
Eigen::VectorXcd evolved(const ModeBasis& basis, const SpectralAmplitudes& g, double time) {
  const Eigen::VectorXd& w = basis.omegas();
  Eigen::VectorXcd h(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    h[i] = g.values()[i] * std::polar(1.0 / std::sqrt(2.0 * w[i]), -w[i] * time);
  }
  return h;
}

}  // namespace

void validate_packet(const WavepacketSpec& spec, const Grid& grid) {
  const double w = spec.center_frequency;
  const double sw = spec.spectral_std;
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("packet.omega must be > 0");
  if (!(sw > 0.0) || !(sw < w / 3.0)) {
    throw ConfigError("packet.sigma_omega must lie in (0, omega/3), got " + std::to_string(sw));
  }
  const double dnorm = std::hypot(spec.direction[0], spec.direction[1]);
  if (std::abs(dnorm - 1.0) > 1e-12) throw ConfigError("packet.direction must be a unit vector");
  if (grid.dimension() == 1 && spec.direction[1] != 0.0) {
    throw ConfigError("packet.direction must lie along x on a 1D grid");
  }
  if (grid.dimension() == 2 && !(spec.transverse_std > 0.0)) {
    throw ConfigError("packet.transverse_std must be > 0 on a 2D grid");
  }
  const double sx = spec.spatial_std();
  for (int a = 0; a < grid.dimension(); ++a) {
    const double lo = grid.origin(a);
    const double c = spec.center[static_cast<std::size_t>(a)];
    if (!(c > lo && c < lo + grid.length(a))) {
      throw GeometryError("packet centre lies outside the grid along axis " + std::to_string(a));
    }
    const double d = spec.direction[static_cast<std::size_t>(a)];
    const double st = grid.dimension() == 2 ? spec.transverse_std : 0.0;
    const double axis_std = std::sqrt(sx * sx * d * d + st * st * (1.0 - d * d));
    if (4.0 * axis_std > 0.5 * grid.length(a)) {
      throw GeometryError("packet 4-sigma envelope (" + std::to_string(4.0 * axis_std) +
                          " m) exceeds half the domain along axis " + std::to_string(a) + " (" +
                          std::to_string(0.5 * grid.length(a)) + " m)");
    }
  }
}

Eigen::VectorXcd packet_profile(const WavepacketSpec& spec, const Grid& grid) {
  validate_packet(spec, grid);
  const double sx = spec.spatial_std();
  const double st = spec.transverse_std;
  const auto n = grid.dof_count();
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = grid.position(j);
    const double dx = grid.periodic_delta(0, r[0], spec.center[0]);
    const double dy = grid.dimension() == 2 ? grid.periodic_delta(1, r[1], spec.center[1]) : 0.0;
    const double par = dx * spec.direction[0] + dy * spec.direction[1];
    double envelope = -par * par / (4.0 * sx * sx);
    if (grid.dimension() == 2) {
      const double perp = -dx * spec.direction[1] + dy * spec.direction[0];
      envelope -= perp * perp / (4.0 * st * st);
    }
    psi[static_cast<Eigen::Index>(j)] = std::polar(std::exp(envelope), spec.center_frequency * par);
  }
  return psi;
}

SpectralAmplitudes::SpectralAmplitudes(Eigen::VectorXcd g) : g_(std::move(g)) {
  const double norm = g_.norm();
  if (!(norm >= 1e-12) || !std::isfinite(norm)) {
    throw EmptyProjectionError("spectral amplitudes have vanishing norm");
  }
  g_ /= norm;
}

SpectralAmplitudes SpectralAmplitudes::phased(std::complex<double> unit) const {
  SpectralAmplitudes out;
  out.g_ = g_ * unit;
  return out;
}

Projection project_packet(const ModeBasis& basis, const Eigen::VectorXcd& profile) {
  if (static_cast<std::size_t>(profile.size()) != basis.dof_count()) {
    throw DimensionMismatchError("profile size does not match the basis grid");
  }
  const double dv = basis.grid().cell_volume();
  const Eigen::VectorXcd weighted = basis.mass().cast<std::complex<double>>().cwiseProduct(profile);
  Eigen::VectorXcd raw = basis.modes().adjoint() * weighted * dv;
  const double raw2 = raw.squaredNorm();
  if (!(std::sqrt(raw2) >= 1e-12)) {
    throw EmptyProjectionError("packet has no overlap with the retained modes");
  }
  const double total = (basis.mass().array() * profile.array().abs2()).sum() * dv;
  Projection p;
  p.capture_fraction = raw2 / (dv * total);
  p.amplitudes = SpectralAmplitudes(std::move(raw));
  return p;
}

Eigen::VectorXcd reconstruct(const ModeBasis& basis, const SpectralAmplitudes& g) {
  check_size(basis, g);
  return basis.modes() * g.values();
}

std::complex<double> overlap(const SpectralAmplitudes& a, const SpectralAmplitudes& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("overlap of amplitudes of unequal length");
  return a.values().dot(b.values());
}

std::complex<double> detector_amplitude(const ModeBasis& basis, const SpectralAmplitudes& g,
                                        const DetectorSpec& det) {
  const std::size_t cell[] = {det.cell_index};
  return detector_amplitudes(basis, g, cell, det.time)[0];
}

Eigen::VectorXcd detector_amplitudes(const ModeBasis& basis, const SpectralAmplitudes& g,
                                     std::span<const std::size_t> cells, double time) {
  check_size(basis, g);
  const Eigen::VectorXcd h = evolved(basis, g, time);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(cells.size()));
  for (std::size_t k = 0; k < cells.size(); ++k) {
    check_cell(basis, cells[k]);
    out[static_cast<Eigen::Index>(k)] =
        (basis.modes().row(static_cast<Eigen::Index>(cells[k])).transpose().array() * h.array())
            .sum();
  }
  return out;
}

void validate_state(const NoonStateSpec& state) {
  if (state.photons <= 0 || state.photons % 2 != 0) {
    throw ConfigError("N00N photon number must be even and positive, got " +
                      std::to_string(state.photons));
  }
  if (state.left.size() != state.right.size() || state.left.size() == 0) {
    throw DimensionMismatchError("N00N branches must share one non-empty basis");
  }
}

}  // namespace noonsim
