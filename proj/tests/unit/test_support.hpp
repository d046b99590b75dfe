#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "noonsim/grid.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim::test_util {

inline ModeBasis uniform_line_basis(int cells, double length, double eps = 1.0) {
  const Grid grid = Grid::centered_line(cells, length);
  PermittivityMap map(grid, std::vector<double>(grid.dof_count(), eps));
  const auto ops = build_operators(map);
  return solve_modes(ops, default_omega_floor(grid));
}

/// Non-physical basis with random complex columns and frequencies, used where only the
/// algebra of the correlation terms matters.
inline ModeBasis random_basis(int modes, std::mt19937_64& rng, int cells = 8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> w(0.5, 3.0);
  Eigen::MatrixXcd phi(cells, modes);
  for (Eigen::Index i = 0; i < phi.size(); ++i) phi.data()[i] = {u(rng), u(rng)};
  Eigen::VectorXd omegas(modes);
  for (int i = 0; i < modes; ++i) omegas[i] = w(rng);
  return ModeBasis(Grid::line(cells, 0.1, 0.0), Eigen::VectorXd::Ones(cells), omegas, phi);
}

inline SpectralAmplitudes random_amplitudes(int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::VectorXcd g(modes);
  for (auto& v : g) v = {n(rng), n(rng)};
  return SpectralAmplitudes(g);
}

}  // namespace noonsim::test_util
