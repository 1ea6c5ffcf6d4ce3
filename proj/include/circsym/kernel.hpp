#pragma once

#include <string>

namespace circsym {

enum class KernelFamily { Gaussian, Stable };

/// Characteristic kernel psi(xi) = exp(-lambda * xi^mu).
///
/// mu = 2 is the Gaussian kernel; 0 < mu < 2 gives the spherical stable
/// family. Constructing a stable kernel with mu = 2 yields the Gaussian one.
class KernelSpec {
 public:
  static KernelSpec gaussian(double lambda);
  static KernelSpec stable(double lambda, double mu);

  KernelFamily family() const { return family_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  bool is_gaussian() const { return family_ == KernelFamily::Gaussian; }

  /// psi evaluated at xi with xi^2 given; avoids a square root on the
  /// Gaussian path. Negative round-off in xi_sq is treated as zero.
  double psi_from_squared(double xi_sq) const;

  std::string describe() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily family, double lambda, double mu)
      : family_(family), lambda_(lambda), mu_(mu) {}
  KernelFamily family_;
  double lambda_;
  double mu_;
};

/// exp(-lambda * xi^mu). Throws DomainError for negative or non-finite xi.
double psi(const KernelSpec& k, double xi);

/// Absolute slack allowed in c^2 + s^2 <= nj * nk.
inline constexpr double kCauchySchwarzSlack = 1e-9;

/// Integral over theta in [-pi, pi) of psi(sqrt(nj + nk - 2 (c cos theta + s sin theta))).
///
/// Gaussian kernels use the Bessel closed form
///   2 pi exp(2 lambda r - lambda (nj + nk)) * bessel_i0_scaled(2 lambda r),
/// r = sqrt(c^2 + s^2); stable kernels fall back to angular_integral_quadrature.
/// Throws InconsistentSummariesError if c^2 + s^2 exceeds nj * nk beyond slack.
double angular_integral(const KernelSpec& k, double nj, double nk, double c, double s);

/// The same integral by quadrature of psi over [0, pi], doubled. Gaussian
/// kernels use adaptive Gauss-Legendre on the smooth integrand; stable kernels
/// use panels graded towards theta = 0 where psi may have a cusp.
double angular_integral_quadrature(const KernelSpec& k, double nj, double nk, double c, double s,
                                   double rel_tol = 1e-10);

/// sqrt(c^2 + s^2) after validating the Cauchy-Schwarz bound.
double checked_modulus(double nj, double nk, double c, double s);

}  // namespace circsym
