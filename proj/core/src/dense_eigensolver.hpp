#pragma once

#include <Eigen/Dense>

namespace noonsim::detail {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

/// Full eigendecomposition of a dense real symmetric matrix (LAPACK dsyevd). Only the lower
/// triangle of `a` is referenced; `a` is consumed as workspace.
SymmetricEigen symmetric_eigen(Eigen::MatrixXd a);

}  // namespace noonsim::detail
