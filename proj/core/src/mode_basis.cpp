#include "noonsim/mode_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dense_eigensolver.hpp"
#include "noonsim/error.hpp"

namespace noonsim {

namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::VectorXd mass_vector(const PermittivityMap& map) {
  const auto& eps = map.values();
  return Eigen::Map<const Eigen::VectorXd>(eps.data(), static_cast<Eigen::Index>(eps.size()));
}

// Adds the periodic second difference along one axis.
void add_axis_stencil(std::vector<Triplet>& t, const Grid& grid, int axis) {
  const int nx = grid.cells(0);
  const int ny = grid.dimension() == 2 ? grid.cells(1) : 1;
  const double w = 1.0 / (grid.cell_size(axis) * grid.cell_size(axis));
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const auto row = static_cast<int>(grid.flat_index(ix, iy));
      int lo = 0;
      int hi = 0;
      if (axis == 0) {
        lo = static_cast<int>(grid.flat_index((ix + nx - 1) % nx, iy));
        hi = static_cast<int>(grid.flat_index((ix + 1) % nx, iy));
      } else {
        lo = static_cast<int>(grid.flat_index(ix, (iy + ny - 1) % ny));
        hi = static_cast<int>(grid.flat_index(ix, (iy + 1) % ny));
      }
      t.emplace_back(row, row, 2.0 * w);
      t.emplace_back(row, lo, -w);
      t.emplace_back(row, hi, -w);
    }
  }
}

DiscreteOperators assemble(const PermittivityMap& map, int axes) {
  const Grid& grid = map.grid();
  const auto n = static_cast<Eigen::Index>(grid.dof_count());
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 3 * static_cast<std::size_t>(axes));
  for (int a = 0; a < axes; ++a) add_axis_stencil(t, grid, a);
  DiscreteOperators ops{grid, Eigen::SparseMatrix<double>(n, n), mass_vector(map)};
  ops.stiffness.setFromTriplets(t.begin(), t.end());
  ops.stiffness.makeCompressed();
  return ops;
}

}  // namespace

DiscreteOperators build_operators_1d(const PermittivityMap& map) {
  if (map.grid().dimension() != 1) {
    throw DimensionMismatchError("build_operators_1d needs a 1D permittivity map");
  }
  return assemble(map, 1);
}

DiscreteOperators build_operators_2d_tmz(const PermittivityMap& map) {
  if (map.grid().dimension() != 2) {
    throw DimensionMismatchError("build_operators_2d_tmz needs a 2D permittivity map");
  }
  return assemble(map, 2);
}

DiscreteOperators build_operators(const PermittivityMap& map) {
  return map.grid().dimension() == 1 ? build_operators_1d(map) : build_operators_2d_tmz(map);
}

ModeBasis::ModeBasis(Grid grid, Eigen::VectorXd mass, Eigen::VectorXd omegas,
                     Eigen::MatrixXcd modes)
    : grid_(std::move(grid)),
      mass_(std::move(mass)),
      omegas_(std::move(omegas)),
      modes_(std::move(modes)) {
  if (static_cast<std::size_t>(mass_.size()) != grid_.dof_count() ||
      modes_.rows() != mass_.size() || modes_.cols() != omegas_.size()) {
    throw DimensionMismatchError("ModeBasis: inconsistent grid, mass, omega and mode sizes");
  }
  for (Eigen::Index i = 0; i < omegas_.size(); ++i) {
    if (!(omegas_[i] > 0.0) || !std::isfinite(omegas_[i])) {
      throw NumericalError("ModeBasis: omega[" + std::to_string(i) + "] must be positive");
    }
  }
}

std::complex<double> ModeBasis::field_coefficient(std::size_t cell, double time,
                                                  std::size_t mode) const {
  if (cell >= dof_count()) throw std::out_of_range("cell index " + std::to_string(cell));
  if (mode >= kept_count()) throw std::out_of_range("mode index " + std::to_string(mode));
  const auto i = static_cast<Eigen::Index>(mode);
  const double w = omegas_[i];
  return modes_(static_cast<Eigen::Index>(cell), i) * std::polar(1.0 / std::sqrt(2.0 * w), -w * time);
}

Eigen::VectorXcd ModeBasis::field_coefficients(std::size_t cell, double time) const {
  if (cell >= dof_count()) throw std::out_of_range("cell index " + std::to_string(cell));
  const auto r = static_cast<Eigen::Index>(cell);
  Eigen::VectorXcd c(omegas_.size());
  for (Eigen::Index i = 0; i < omegas_.size(); ++i) {
    const double w = omegas_[i];
    c[i] = modes_(r, i) * std::polar(1.0 / std::sqrt(2.0 * w), -w * time);
  }
  return c;
}

double default_omega_floor(const Grid& grid) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int a = 0; a < grid.dimension(); ++a) {
    const double k = 2.0 / grid.cell_size(a) * std::sin(std::numbers::pi / grid.cells(a));
    lowest = std::min(lowest, k);
  }
  return 1e-6 * lowest;
}

ModeBasis solve_modes(const DiscreteOperators& ops, double omega_floor) {
  if (!(omega_floor >= 0.0)) throw ConfigError("omega_floor must be >= 0");
  const Eigen::Index n = ops.mass.size();
  if (ops.stiffness.rows() != n || ops.stiffness.cols() != n) {
    throw DimensionMismatchError("stiffness and mass sizes differ");
  }
  if ((ops.mass.array() <= 0.0).any()) throw NumericalError("mass matrix must be positive");

  // M is diagonal, so S phi = w^2 M phi is equivalent to A v = w^2 v with
  // A = M^-1/2 S M^-1/2 and phi = M^-1/2 v; orthonormal v gives Phi^H M Phi = I.
  const Eigen::VectorXd inv_sqrt_m = ops.mass.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd a = inv_sqrt_m.asDiagonal() * Eigen::MatrixXd(ops.stiffness) *
                      inv_sqrt_m.asDiagonal();
  detail::SymmetricEigen eig = detail::symmetric_eigen(std::move(a));

  const double lmax = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * lmax;
  std::vector<Eigen::Index> kept;
  std::vector<double> omegas;
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = eig.values[i];
    if (lambda < -tol) {
      throw NotPositiveSemidefiniteError("eigenvalue " + std::to_string(lambda) +
                                         " below clipping tolerance");
    }
    if (std::abs(lambda) <= tol) lambda = 0.0;
    const double w = std::sqrt(lambda);
    if (w <= omega_floor) continue;
    kept.push_back(i);
    omegas.push_back(w);
  }

  const auto m = static_cast<Eigen::Index>(kept.size());
  Eigen::VectorXd w(m);
  Eigen::MatrixXcd phi(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::VectorXd col = inv_sqrt_m.cwiseProduct(eig.vectors.col(kept[static_cast<std::size_t>(k)]));
    const double norm2 = col.dot(ops.mass.cwiseProduct(col));
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw NumericalError("mode " + std::to_string(k) + " has degenerate normalization");
    }
    col /= std::sqrt(norm2);
    Eigen::Index peak = 0;
    col.cwiseAbs().maxCoeff(&peak);
    if (col[peak] < 0.0) col = -col;
    phi.col(k) = col.cast<std::complex<double>>();
    w[k] = omegas[static_cast<std::size_t>(k)];
  }
  return ModeBasis(ops.grid, ops.mass, std::move(w), std::move(phi));
}

double eigen_residual(const DiscreteOperators& ops, const ModeBasis& basis) {
  const Eigen::MatrixXcd& phi = basis.modes();
  const Eigen::MatrixXd re = phi.real();
  const Eigen::MatrixXd im = phi.imag();
  const Eigen::MatrixXd s_re = ops.stiffness * re;
  const Eigen::MatrixXd s_im = ops.stiffness * im;
  const Eigen::VectorXd w2 = basis.omegas().array().square();
  const Eigen::MatrixXd r_re = s_re - ops.mass.asDiagonal() * re * w2.asDiagonal();
  const Eigen::MatrixXd r_im = s_im - ops.mass.asDiagonal() * im * w2.asDiagonal();
  const double num = std::sqrt(r_re.squaredNorm() + r_im.squaredNorm());
  const double den = std::sqrt(s_re.squaredNorm() + s_im.squaredNorm());
  return den > 0.0 ? num / den : num;
}

double orthonormality_error(const ModeBasis& basis) {
  const Eigen::MatrixXcd& phi = basis.modes();
  Eigen::MatrixXcd g = phi.adjoint() * (basis.mass().asDiagonal() * phi);
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

double hamiltonian_diagonality_error(const DiscreteOperators& ops, const ModeBasis& basis) {
  const Eigen::MatrixXcd& phi = basis.modes();
  const Eigen::MatrixXd re = phi.real();
  const Eigen::MatrixXd im = phi.imag();
  Eigen::MatrixXcd s_phi(phi.rows(), phi.cols());
  s_phi.real() = ops.stiffness * re;
  s_phi.imag() = ops.stiffness * im;
  Eigen::MatrixXcd h = phi.adjoint() * s_phi;
  const Eigen::VectorXd w2 = basis.omegas().array().square();
  h.diagonal() -= w2.cast<std::complex<double>>();
  return h.cwiseAbs().maxCoeff() / w2.maxCoeff();
}

}  // namespace noonsim
