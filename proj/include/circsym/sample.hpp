#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace circsym {

/// n observations in C^d, stored as their real embeddings
/// W_j = (Re z_1, ..., Re z_d, Im z_1, ..., Im z_d), one row per observation.
class ComplexSample {
 public:
  /// `embedding` has n >= 1 rows and 2d columns, d >= 1, all entries finite.
  explicit ComplexSample(Eigen::MatrixXd embedding);

  static ComplexSample from_complex(const std::vector<std::vector<std::complex<double>>>& rows);
  static ComplexSample from_scalars(std::span<const std::complex<double>> values);

  std::size_t n() const { return static_cast<std::size_t>(w_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(w_.cols() / 2); }
  const Eigen::MatrixXd& embedding() const { return w_; }

  std::complex<double> value(std::size_t j, std::size_t i) const {
    return {w_(j, i), w_(j, i + d())};
  }

  /// Every observation multiplied by e^{i alpha}.
  ComplexSample rotated(double alpha) const;
  /// Observation j multiplied by e^{i angles[j]}.
  ComplexSample rotated(std::span<const double> angles) const;

 private:
  Eigen::MatrixXd w_;
};

}  // namespace circsym
