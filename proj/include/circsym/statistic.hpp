#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "circsym/kernel.hpp"
#include "circsym/numerics/accumulate.hpp"
#include "circsym/sample.hpp"

namespace circsym {

/// Sufficient statistics of a sample for every computation in this library.
///
/// With W_j = (X_j, Y_j): N_j = |W_j|^2, C_jk = X_j.X_k + Y_j.Y_k and
/// S_jk = X_k.Y_j - X_j.Y_k, so that C_jk - i S_jk = z_j^H z_k.
struct PairwiseSummaries {
  std::size_t d = 1;
  Eigen::VectorXd norms_sq;
  Eigen::MatrixXd c;
  Eigen::MatrixXd s;

  std::size_t n() const { return static_cast<std::size_t>(norms_sq.size()); }

  /// Checks the symmetry relations and C_jj = N_j, then the pairwise
  /// Cauchy-Schwarz bound. Throws InconsistentSummariesError.
  void validate(double tol = 1e-9) const;
};

/// O(n^2 d) computation of the summaries. Pair entries are bit-symmetric:
/// C_kj == C_jk and S_kj == -S_jk exactly.
PairwiseSummaries pairwise_summaries(const ComplexSample& x);

/// How the rotation-invariant angular term of each pair is computed.
enum class AngularMethod {
  ClosedForm,  ///< Bessel closed form (Gaussian kernels only)
  Quadrature,  ///< numerical integration over [0, pi]
};

/// T_{n,lambda} split into per-pair parts that are invariant under rotating
/// individual observations (the angular integrals, which depend on C and S only
/// through C^2 + S^2) and the part that is not (psi(|W_j - W_k|)).
///
/// Evaluating with per-observation rotation angles costs one kernel
/// evaluation per pair, which is what the rotation bootstrap needs. Terms are
/// accumulated in a FixedPointSum so the result does not depend on the order
/// of observations.
class StatisticEvaluator {
 public:
  StatisticEvaluator(const PairwiseSummaries& ps, const KernelSpec& k, AngularMethod method);

  std::size_t n() const { return n_; }
  const KernelSpec& kernel() const { return kernel_; }

  /// Statistic of the sample itself.
  double evaluate() const;
  /// Statistic of the sample with observation j rotated by angles[j].
  double evaluate(std::span<const double> angles) const;

 private:
  struct Pair {
    std::uint32_t j;
    std::uint32_t k;
    double norm_sum;  // N_j + N_k
    double base;      // -lambda (N_j + N_k); Gaussian only
    double c;
    double s;
    double invariant;  // angular integral / (2 pi)
  };
  double pair_term(const Pair& p, double c_rot) const;
  double finish(const FixedPointSum& sum) const;

  KernelSpec kernel_;
  std::size_t n_;
  std::vector<Pair> pairs_;
  FixedPointSum diagonal_;
};

/// T_{n,lambda} for a Gaussian kernel via the Bessel closed form. Throws
/// UnsupportedError for stable kernels. Negative round-off is clamped to 0.
double statistic_closed(const PairwiseSummaries& ps, const KernelSpec& k);

/// T_{n,lambda} for any kernel with each angular integral computed by
/// quadrature over [0, pi].
double statistic_quadrature(const PairwiseSummaries& ps, const KernelSpec& k);

/// Closed form for Gaussian kernels, quadrature otherwise.
double statistic(const PairwiseSummaries& ps, const KernelSpec& k);

/// Clamps a statistic to zero; throws NumericError if it is more negative
/// than round-off allows (1e-10 relative to the largest possible |T|).
double clamp_statistic(double t, std::size_t n);

enum class ThetaConvention {
  /// psi as used by the statistic; the profile integrates to T_{n,lambda}.
  Section2,
  /// unnormalized weight exp(-lambda |s|^2); psi replaced by
  /// (pi/lambda)^d exp(-xi^2 / (4 lambda)). Gaussian kernels only.
  Section3,
};

struct ThetaProfile {
  std::vector<double> thetas;
  std::vector<double> values;
  ThetaConvention convention = ThetaConvention::Section2;
};

/// Grid of `size` angles in [-pi, pi): theta_i = (i - floor(size/2)) 2 pi / size.
/// Always contains 0 and is symmetric about 0 for odd sizes.
std::vector<double> profile_grid(std::size_t size);

/// D(theta) = (2/n) sum_{j,k} [psi(|W_j - W_k|) - psi(|W_j - M_theta W_k|)].
/// Under Section2 the integral of D over [-pi, pi) equals T_{n,lambda}.
/// Throws DomainError for grid values outside [-pi, pi).
ThetaProfile theta_profile(const PairwiseSummaries& ps, const KernelSpec& k,
                           std::span<const double> grid,
                           ThetaConvention convention = ThetaConvention::Section2);

/// (2 / pi^d) lambda^{d+1} T_{n,lambda}(theta) under the Section3 convention,
/// evaluated with expm1 so it stays accurate for large lambda.
double large_lambda_scaled(const PairwiseSummaries& ps, double lambda, double theta,
                           std::size_t d);

/// The lambda -> infinity limit of large_lambda_scaled: 2 (1 - cos theta) |W_bar|^2.
double large_lambda_limit(const ComplexSample& x, double theta);

struct OracleOptions {
  /// Convergence target between successive refinements.
  double tolerance = 1e-6;
  int max_refinements = 4;
};

/// Brute-force evaluation of
///   T_n = n int_Theta int_{R^2} |phi_n(s) - phi_{n,theta}(s)|^2 w(|s|) ds dtheta
/// for d = 1 and n <= 4, independent of the kernel identities. w is the
/// Gaussian density with componentwise variance 2 lambda (mu = 2) or the
/// bivariate Cauchy density (mu = 1), whose characteristic functions are
/// exp(-lambda |v|^mu). Intended for tests.
///
/// Polar coordinates s = rho (cos beta, sin beta) turn the rotation into a
/// shift in beta; beta and theta use a periodic trapezoid grid and rho uses
/// composite Gauss-Legendre. The Cauchy tail beyond the truncation radius is
/// added through its non-oscillating limit 2/n.
double oracle_direct(const ComplexSample& x, const KernelSpec& k, const OracleOptions& options = {});

/// T_n / n, the strongly consistent estimate of the distance to symmetry.
double delta_estimate(double t, std::size_t n);

}  // namespace circsym
