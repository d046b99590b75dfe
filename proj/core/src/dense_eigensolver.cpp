#include "dense_eigensolver.hpp"

#include <lapacke.h>

#include <cmath>
#include <random>
#include <string>

#include "noonsim/error.hpp"

#ifndef NOONSIM_NO_PREINIT
extern "C" int noonsim_openblas_preinit_anchor;
#else
static constexpr int noonsim_openblas_preinit_anchor = 0;
#endif

namespace noonsim::detail {

namespace {

// O(n^2) probe of V^T V = I, catching a broken LAPACK backend without an extra n^3 product.
double orthonormality_probe(const Eigen::MatrixXd& v) {
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(v.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
  x /= x.norm();
  return (v.transpose() * (v * x) - x).norm();
}

}  // namespace

SymmetricEigen symmetric_eigen(Eigen::MatrixXd a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.cols() != a.rows()) throw DimensionMismatchError("symmetric_eigen: matrix not square");
  SymmetricEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  // Eigen is column-major, so the lower triangle in Eigen's view is LAPACK's 'L'.
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed with info = " + std::to_string(info));
  }
  const double probe = orthonormality_probe(a) + noonsim_openblas_preinit_anchor;
  if (!std::isfinite(probe) || probe > 1e-8) {
    throw NumericalError("dsyevd returned non-orthonormal eigenvectors (probe " +
                         std::to_string(probe) + "); check the LAPACK/BLAS backend");
  }
  out.vectors = std::move(a);
  return out;
}

}  // namespace noonsim::detail
