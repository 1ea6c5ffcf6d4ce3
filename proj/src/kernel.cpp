#include "circsym/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "circsym/error.hpp"
#include "circsym/numerics/bessel.hpp"
#include "circsym/numerics/quadrature.hpp"

namespace circsym {

KernelSpec KernelSpec::gaussian(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("kernel: lambda must be positive and finite");
  }
  return KernelSpec(KernelFamily::Gaussian, lambda, 2.0);
}

KernelSpec KernelSpec::stable(double lambda, double mu) {
  if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("kernel: mu must lie in (0, 2]");
  if (mu == 2.0) return gaussian(lambda);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("kernel: lambda must be positive and finite");
  }
  return KernelSpec(KernelFamily::Stable, lambda, mu);
}

double KernelSpec::psi_from_squared(double xi_sq) const {
  if (xi_sq <= 0.0) return 1.0;
  if (family_ == KernelFamily::Gaussian) return std::exp(-lambda_ * xi_sq);
  return std::exp(-lambda_ * std::pow(xi_sq, 0.5 * mu_));
}

std::string KernelSpec::describe() const {
  std::ostringstream out;
  out << (is_gaussian() ? "gaussian" : "stable") << "(lambda=" << lambda_ << ", mu=" << mu_ << ")";
  return out.str();
}

double psi(const KernelSpec& k, double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("psi: xi must be finite and >= 0");
  if (k.is_gaussian()) return std::exp(-k.lambda() * xi * xi);
  return std::exp(-k.lambda() * std::pow(xi, k.mu()));
}

double checked_modulus(double nj, double nk, double c, double s) {
  if (!(nj >= 0.0) || !(nk >= 0.0)) {
    throw DomainError("angular_integral: squared norms must be non-negative");
  }
  const double r2 = c * c + s * s;
  const double bound = nj * nk;
  // Round-off in r2 grows with the magnitude of the products.
  const double slack = kCauchySchwarzSlack + 8.0 * std::numeric_limits<double>::epsilon() * bound;
  if (r2 > bound + slack) {
    throw InconsistentSummariesError("pairwise summaries violate the Cauchy-Schwarz bound");
  }
  return std::sqrt(r2);
}

double angular_integral(const KernelSpec& k, double nj, double nk, double c, double s) {
  const double r = checked_modulus(nj, nk, c, s);
  if (!k.is_gaussian()) return angular_integral_quadrature(k, nj, nk, c, s);
  const double lam = k.lambda();
  const double x = 2.0 * lam * r;
  return 2.0 * std::numbers::pi * std::exp(x - lam * (nj + nk)) * bessel_i0_scaled(x);
}

double angular_integral_quadrature(const KernelSpec& k, double nj, double nk, double c, double s,
                                   double rel_tol) {
  const double r = checked_modulus(nj, nk, c, s);
  const double nsum = nj + nk;
  auto integrand = [&](double t) { return k.psi_from_squared(nsum - 2.0 * r * std::cos(t)); };
  const double half = k.is_gaussian()
                          ? integrate_adaptive(integrand, 0.0, std::numbers::pi, rel_tol)
                          : integrate_graded(integrand, 0.0, std::numbers::pi, rel_tol);
  return 2.0 * half;
}

}  // namespace circsym
