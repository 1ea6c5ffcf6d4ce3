#pragma once

#include <Eigen/Dense>

namespace circsym {

/// What to do with eigenvalues below -tol.
enum class PsdPolicy {
  Reject,   ///< throw NotPsdError
  Project,  ///< clip to zero (projection onto the PSD cone), counted as clipped
};

struct PsdFactor {
  /// L with L * L^T equal to the clipped matrix. Columns are scaled
  /// eigenvectors, so L is square but not triangular.
  Eigen::MatrixXd factor;
  /// Eigenvalues that were replaced by zero.
  int clipped = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Factors a symmetric positive semidefinite matrix through its eigen
/// decomposition. Eigenvalues in [-tol, tol] are set to zero; eigenvalues
/// below -tol raise NotPsdError under PsdPolicy::Reject. Throws DomainError
/// for a non-square or asymmetric input.
PsdFactor psd_factor(const Eigen::MatrixXd& m, double tol, PsdPolicy policy = PsdPolicy::Reject);

}  // namespace circsym
