#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "circsym/sample.hpp"

namespace testing {

// Independent of the library generator on purpose.
inline circsym::ComplexSample random_sample(std::size_t n, std::size_t d, std::mt19937_64& gen,
                                            double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd w(n, 2 * d);
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = normal(gen);
  return circsym::ComplexSample(w);
}

inline std::vector<double> random_angles(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> a(n);
  for (auto& v : a) v = u(gen);
  return a;
}

// e^{-t} I0(t) from the power series in long double, summed to convergence.
inline double i0e_series(double t) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = 0.25L * t * t;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-25L * sum) break;
  }
  return static_cast<double>(sum * std::exp(-static_cast<long double>(t)));
}

// Observation j as a complex vector.
inline std::vector<std::complex<double>> row(const circsym::ComplexSample& x, std::size_t j) {
  std::vector<std::complex<double>> z(x.d());
  for (std::size_t i = 0; i < x.d(); ++i) z[i] = x.value(j, i);
  return z;
}

}  // namespace testing
