#include "circsym/numerics/psd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "circsym/error.hpp"

namespace circsym {

PsdFactor psd_factor(const Eigen::MatrixXd& m, double tol, PsdPolicy policy) {
  if (m.rows() != m.cols()) throw DomainError("psd_factor: matrix must be square");
  if (!(tol >= 0.0)) throw DomainError("psd_factor: tolerance must be non-negative");
  if (!m.allFinite()) throw DomainError("psd_factor: matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  const double sym_slack = tol + 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > sym_slack) {
    throw DomainError("psd_factor: matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success) throw NumericError("psd_factor: eigen decomposition failed");

  PsdFactor out;
  Eigen::VectorXd values = solver.eigenvalues();
  if (values.size() > 0) {
    out.min_eigenvalue = values.minCoeff();
    out.max_eigenvalue = values.maxCoeff();
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    double& v = values[i];
    if (v < -tol && policy == PsdPolicy::Reject) {
      throw NotPsdError("psd_factor: eigenvalue " + std::to_string(v) + " below -" +
                            std::to_string(tol),
                        v);
    }
    if (v <= tol) {
      v = 0.0;
      ++out.clipped;
    }
  }
  out.factor = solver.eigenvectors() * values.cwiseSqrt().asDiagonal();
  return out;
}

}  // namespace circsym
