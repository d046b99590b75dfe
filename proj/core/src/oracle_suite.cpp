#include "noonsim/oracle_suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "noonsim/correlation.hpp"

namespace noonsim {

namespace {

using cd = std::complex<double>;

ModeBasis random_basis(std::mt19937_64& rng, int modes) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  const Grid grid = Grid::line(Grid::kMinCells, 0.1, 0.0);
  const auto n = static_cast<Eigen::Index>(grid.dof_count());
  Eigen::MatrixXcd phi(n, modes);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < modes; ++i) phi(j, i) = cd(normal(rng), normal(rng));
  }
  Eigen::VectorXd w(modes);
  for (Eigen::Index i = 0; i < modes; ++i) w[i] = freq(rng);
  return ModeBasis(grid, Eigen::VectorXd::Ones(n), w, phi);
}

SpectralAmplitudes random_amplitudes(std::mt19937_64& rng, int modes) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd g(modes);
  for (Eigen::Index i = 0; i < modes; ++i) g[i] = cd(normal(rng), normal(rng));
  return SpectralAmplitudes(g);
}

}  // namespace

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

OracleReport run_oracle_suite(const OracleCheckConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> when(0.0, 5.0);
  std::uniform_int_distribution<std::size_t> cell(0, Grid::kMinCells - 1);

  OracleReport r;
  for (int n : cfg.photons) {
    for (int m : cfg.mode_counts) {
      for (int d = 0; d < cfg.draws; ++d) {
        const ModeBasis basis = random_basis(rng, m);
        const NoonStateSpec state{n, random_amplitudes(rng, m), random_amplitudes(rng, m),
                                  angle(rng)};
        const DetectorSpec da{cell(rng), when(rng), "z", n / 2};
        const DetectorSpec db{cell(rng), when(rng), "z", n / 2};
        const CFComponents a = noon_cf(basis, state, da, db);
        const CFComponents b = noon_cf_oracle(basis, state, da, db);
        r.max_rel_numerator = std::max(r.max_rel_numerator, relative_deviation(a.numerator, b.numerator));
        r.max_rel_denom_alpha =
            std::max(r.max_rel_denom_alpha, relative_deviation(a.denom_alpha, b.denom_alpha));
        r.max_rel_denom_beta =
            std::max(r.max_rel_denom_beta, relative_deviation(a.denom_beta, b.denom_beta));
        r.max_rel_state_norm =
            std::max(r.max_rel_state_norm, relative_deviation(a.state_norm, b.state_norm));
        r.max_rel_value = std::max(r.max_rel_value, relative_deviation(a.value, b.value));
        r.flags_match = r.flags_match && a.regularized == b.regularized;
        ++r.draws;
      }
    }
  }
  r.max_rel = std::max({r.max_rel_numerator, r.max_rel_denom_alpha, r.max_rel_denom_beta,
                        r.max_rel_state_norm, r.max_rel_value});
  r.pass = r.flags_match && r.max_rel < cfg.tolerance;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace noonsim
