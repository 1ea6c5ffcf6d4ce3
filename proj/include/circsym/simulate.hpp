#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "circsym/bootstrap.hpp"
#include "circsym/kernel.hpp"
#include "circsym/numerics/psd.hpp"
#include "circsym/numerics/rng.hpp"
#include "circsym/sample.hpp"

namespace circsym {

/// Zero-mean scalar complex Gaussian with variance czz and circularity
/// quotient rho, sampled as the bivariate normal with
/// V(X) = czz (1 + Re rho) / 2, V(Y) = czz (1 - Re rho) / 2 and
/// corr(X, Y) = Im rho / sqrt(1 - (Re rho)^2).
struct ScalarGaussianRho {
  std::complex<double> rho{0.0, 0.0};
  double czz = 1.0;
};

/// CN_2((u, u), I_2): standard complex normal noise (real and imaginary parts
/// i.i.d. N(0, 1/2)) shifted by u in both coordinates.
struct ShiftedCN2 {
  double u = 0.0;
};

/// Uniform on {1+i, 1-i, -1+i, -1-i}: proper but not circular.
struct Discrete4 {};

/// e^{i Phi}, Phi uniform on [-pi, pi).
struct CircleUniform {};

/// P e^{i Theta}, P ~ U[0, 1], Theta equal to 0, 2pi/3, 4pi/3 with
/// probability 1/6 each and uniform on [0, 2pi) with probability 1/2.
struct Contaminated {};

/// CN_d(0, Gamma, P) with Gamma the all-ones matrix and P = i A^T A, A having
/// U[0, 1] entries drawn once from stream (a_seed, 0).
///
/// This (Gamma, P) pair is generally not a valid covariance/pseudo-covariance
/// pair: the augmented real covariance has negative eigenvalues. Under
/// PsdPolicy::Project they are clipped to zero (nearest PSD matrix);
/// PsdPolicy::Reject raises NotPsdError for eigenvalues below -1e-8.
struct HighDimCN {
  std::size_t d = 2;
  std::uint64_t a_seed = 0;
  PsdPolicy policy = PsdPolicy::Project;
};

using DistributionSpec =
    std::variant<ScalarGaussianRho, ShiftedCN2, Discrete4, CircleUniform, Contaminated, HighDimCN>;

/// Throws DomainError if parameters are out of range (|rho| > 1, czz <= 0, d < 1).
void validate(const DistributionSpec& spec);
std::size_t dimension(const DistributionSpec& spec);
std::string distribution_name(const DistributionSpec& spec);

inline constexpr double kPseudoCovarianceTolerance = 1e-8;

/// U[0, 1] matrix A of HighDimCN.
Eigen::MatrixXd highdim_mixing_matrix(std::size_t d, std::uint64_t a_seed);

/// Real covariance of (X, Y) for Z = X + iY with covariance gamma and
/// pseudo-covariance pseudo:
///   Cov(X,X) = Re(gamma + pseudo)/2, Cov(Y,Y) = Re(gamma - pseudo)/2,
///   Cov(X,Y) = Im(pseudo - gamma)/2.
Eigen::MatrixXd augmented_covariance(const Eigen::MatrixXcd& gamma, const Eigen::MatrixXcd& pseudo);

/// Sampler with per-distribution setup (the HighDimCN factorization) done once.
class Sampler {
 public:
  explicit Sampler(DistributionSpec spec);

  const DistributionSpec& spec() const { return spec_; }
  std::size_t dimension() const { return d_; }
  ComplexSample draw(std::size_t n, const RngStream& stream) const;

  /// HighDimCN only: eigenvalues clipped in the augmented covariance.
  int clipped_eigenvalues() const { return clipped_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  const Eigen::MatrixXd& factor() const { return factor_; }

 private:
  DistributionSpec spec_;
  std::size_t d_;
  Eigen::MatrixXd factor_;
  int clipped_ = 0;
  double min_eigenvalue_ = 0.0;
};

/// n draws from `spec` using `stream`.
ComplexSample sample(const DistributionSpec& spec, std::size_t n, const RngStream& stream);

struct CellResult {
  std::size_t rejections = 0;
  std::size_t m = 0;
  double rate = 0.0;
  /// sqrt(rate (1 - rate) / m)
  double standard_error = 0.0;
};

/// Fraction of m simulated datasets whose bootstrap p-value is <= alpha.
/// Replication r draws data from stream.substream(r) and bootstraps with the
/// seed stream.substream(r).derive_seed(); replications run on `threads`
/// workers and the result does not depend on their number.
CellResult level_power_cell(const Sampler& sampler, std::size_t n, const KernelSpec& k,
                            std::size_t m, const BootstrapConfig& cfg, double alpha,
                            const RngStream& stream, unsigned threads = 1);
CellResult level_power_cell(const DistributionSpec& spec, std::size_t n, const KernelSpec& k,
                            std::size_t m, const BootstrapConfig& cfg, double alpha,
                            const RngStream& stream, unsigned threads = 1);

}  // namespace circsym
