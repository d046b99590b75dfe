#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "noonsim/grid.hpp"

namespace noonsim {

/// Discrete counterpart of the scalar wave operator on a periodic grid, in units with c = 1.
/// `stiffness` is the central-difference -Laplacian (1/m^2); `mass` is the diagonal of M (eps per
/// cell). Both are indexed by flat cell index.
struct DiscreteOperators {
  Grid grid;
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
};

/// 3-point periodic stencil (-1, 2, -1)/dx^2. Requires a 1D map.
DiscreteOperators build_operators_1d(const PermittivityMap& map);

/// 5-point periodic stencil for the TMz scalar field, x-fastest ordering. Requires a 2D map.
DiscreteOperators build_operators_2d_tmz(const PermittivityMap& map);

/// Dispatches on the map's dimension.
DiscreteOperators build_operators(const PermittivityMap& map);

/// Normal modes of a discretized structure: S phi_i = omega_i^2 M phi_i with
/// Phi^H M Phi = I. Immutable once built; safe to share between threads.
class ModeBasis {
 public:
  /// Takes ownership of already-solved data. Columns of `modes` must be M-orthonormal.
  ModeBasis(Grid grid, Eigen::VectorXd mass, Eigen::VectorXd omegas, Eigen::MatrixXcd modes);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const Eigen::VectorXd& mass() const noexcept { return mass_; }
  [[nodiscard]] const Eigen::VectorXd& omegas() const noexcept { return omegas_; }
  [[nodiscard]] const Eigen::MatrixXcd& modes() const noexcept { return modes_; }
  [[nodiscard]] std::size_t kept_count() const noexcept {
    return static_cast<std::size_t>(omegas_.size());
  }
  [[nodiscard]] std::size_t dof_count() const noexcept {
    return static_cast<std::size_t>(mass_.size());
  }

  /// sqrt(1/(2 omega_i)) phi_i(r_cell) exp(-i omega_i t), hbar = 1.
  [[nodiscard]] std::complex<double> field_coefficient(std::size_t cell, double time,
                                                       std::size_t mode) const;

  /// Row of field coefficients for every retained mode at one cell and time.
  [[nodiscard]] Eigen::VectorXcd field_coefficients(std::size_t cell, double time) const;

 private:
  Grid grid_;
  Eigen::VectorXd mass_;
  Eigen::VectorXd omegas_;
  Eigen::MatrixXcd modes_;
};

/// 1e-6 times the smallest nonzero frequency of the same grid filled with vacuum.
double default_omega_floor(const Grid& grid);

/// Full dense generalized eigendecomposition. Modes with omega <= omega_floor (the DC mode) are
/// dropped; retained modes are sorted by ascending omega and each column is phased so that its
/// largest-magnitude entry is real and positive.
ModeBasis solve_modes(const DiscreteOperators& ops, double omega_floor);

inline std::complex<double> field_coefficient(const ModeBasis& basis, std::size_t cell,
                                              double time, std::size_t mode) {
  return basis.field_coefficient(cell, time, mode);
}

/// ||S Phi - M Phi diag(omega^2)||_F / ||S Phi||_F.
double eigen_residual(const DiscreteOperators& ops, const ModeBasis& basis);

/// max |Phi^H M Phi - I|. O(n^3); meant for tests and small grids.
double orthonormality_error(const ModeBasis& basis);

/// max |Phi^H S Phi - diag(omega^2)| / max(omega^2). O(n^3).
double hamiltonian_diagonality_error(const DiscreteOperators& ops, const ModeBasis& basis);

}  // namespace noonsim
