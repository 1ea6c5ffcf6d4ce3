#include "circsym/sample.hpp"

#include <cmath>

#include "circsym/error.hpp"

namespace circsym {

ComplexSample::ComplexSample(Eigen::MatrixXd embedding) : w_(std::move(embedding)) {
  if (w_.rows() < 1) throw DomainError("sample: at least one observation is required");
  if (w_.cols() < 2 || w_.cols() % 2 != 0) {
    throw DomainError("sample: embedding needs an even, positive number of columns");
  }
  if (!w_.allFinite()) throw DomainError("sample: entries must be finite");
}

ComplexSample ComplexSample::from_complex(
    const std::vector<std::vector<std::complex<double>>>& rows) {
  if (rows.empty()) throw DomainError("sample: at least one observation is required");
  const std::size_t d = rows.front().size();
  Eigen::MatrixXd w(rows.size(), 2 * d);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != d) throw DomainError("sample: rows differ in dimension");
    for (std::size_t i = 0; i < d; ++i) {
      w(j, i) = rows[j][i].real();
      w(j, i + d) = rows[j][i].imag();
    }
  }
  return ComplexSample(std::move(w));
}

ComplexSample ComplexSample::from_scalars(std::span<const std::complex<double>> values) {
  Eigen::MatrixXd w(values.size(), 2);
  for (std::size_t j = 0; j < values.size(); ++j) {
    w(j, 0) = values[j].real();
    w(j, 1) = values[j].imag();
  }
  return ComplexSample(std::move(w));
}

ComplexSample ComplexSample::rotated(double alpha) const {
  std::vector<double> angles(n(), alpha);
  return rotated(angles);
}

ComplexSample ComplexSample::rotated(std::span<const double> angles) const {
  if (angles.size() != n()) throw DomainError("sample: one angle per observation required");
  const Eigen::Index dd = static_cast<Eigen::Index>(d());
  Eigen::MatrixXd out(w_.rows(), w_.cols());
  for (Eigen::Index j = 0; j < w_.rows(); ++j) {
    const double c = std::cos(angles[j]);
    const double s = std::sin(angles[j]);
    for (Eigen::Index i = 0; i < dd; ++i) {
      const double x = w_(j, i);
      const double y = w_(j, i + dd);
      out(j, i) = c * x - s * y;
      out(j, i + dd) = s * x + c * y;
    }
  }
  return ComplexSample(std::move(out));
}

}  // namespace circsym
