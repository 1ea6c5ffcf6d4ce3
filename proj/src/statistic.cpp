#include "circsym/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "circsym/error.hpp"
#include "circsym/numerics/bessel.hpp"
#include "circsym/numerics/quadrature.hpp"

namespace circsym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void PairwiseSummaries::validate(double tol) const {
  const Eigen::Index n = norms_sq.size();
  if (c.rows() != n || c.cols() != n || s.rows() != n || s.cols() != n) {
    throw InconsistentSummariesError("pairwise summaries: shape mismatch");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(norms_sq[j] >= 0.0)) throw InconsistentSummariesError("pairwise summaries: negative norm");
    if (std::abs(c(j, j) - norms_sq[j]) > tol * (1.0 + norms_sq[j]) || std::abs(s(j, j)) > tol) {
      throw InconsistentSummariesError("pairwise summaries: inconsistent diagonal");
    }
    for (Eigen::Index k = j + 1; k < n; ++k) {
      if (std::abs(c(j, k) - c(k, j)) > tol || std::abs(s(j, k) + s(k, j)) > tol) {
        throw InconsistentSummariesError("pairwise summaries: C not symmetric or S not antisymmetric");
      }
      checked_modulus(norms_sq[j], norms_sq[k], c(j, k), s(j, k));
    }
  }
}

PairwiseSummaries pairwise_summaries(const ComplexSample& x) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.n());
  const Eigen::Index d = static_cast<Eigen::Index>(x.d());
  const Eigen::MatrixXd& w = x.embedding();
  PairwiseSummaries ps;
  ps.d = x.d();
  ps.norms_sq.resize(n);
  ps.c.resize(n, n);
  ps.s.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double nj = 0.0;
    for (Eigen::Index i = 0; i < 2 * d; ++i) nj += w(j, i) * w(j, i);
    ps.norms_sq[j] = nj;
    ps.c(j, j) = nj;
    ps.s(j, j) = 0.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      // Each dot product runs over coordinates in a fixed order, so swapping
      // j and k reproduces the same bits.
      double xx = 0.0, yy = 0.0, xkyj = 0.0, xjyk = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        xx += w(j, i) * w(k, i);
        yy += w(j, i + d) * w(k, i + d);
        xkyj += w(k, i) * w(j, i + d);
        xjyk += w(j, i) * w(k, i + d);
      }
      const double cjk = xx + yy;
      const double sjk = xkyj - xjyk;
      ps.c(j, k) = cjk;
      ps.c(k, j) = cjk;
      ps.s(j, k) = sjk;
      ps.s(k, j) = -sjk;
    }
  }
  return ps;
}

StatisticEvaluator::StatisticEvaluator(const PairwiseSummaries& ps, const KernelSpec& k,
                                       AngularMethod method)
    : kernel_(k), n_(ps.n()) {
  if (method == AngularMethod::ClosedForm && !k.is_gaussian()) {
    throw UnsupportedError("closed form requires a Gaussian kernel; use quadrature");
  }
  if (n_ == 0) throw DomainError("statistic: empty sample");
  const double lam = k.lambda();
  auto invariant = [&](double nj, double nk, double c, double s) {
    if (method == AngularMethod::ClosedForm) {
      const double r = checked_modulus(nj, nk, c, s);
      const double x = 2.0 * lam * r;
      return std::exp(x - lam * (nj + nk)) * bessel_i0_scaled(x);
    }
    return angular_integral_quadrature(k, nj, nk, c, s) / kTwoPi;
  };

  for (std::size_t j = 0; j < n_; ++j) {
    const double nj = ps.norms_sq[j];
    const double a = method == AngularMethod::ClosedForm ? bessel_i0_scaled(2.0 * lam * nj)
                                                         : invariant(nj, nj, nj, 0.0);
    diagonal_.add(1.0 - a);
  }
  pairs_.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k2 = j + 1; k2 < n_; ++k2) {
      Pair p;
      p.j = static_cast<std::uint32_t>(j);
      p.k = static_cast<std::uint32_t>(k2);
      p.norm_sum = ps.norms_sq[j] + ps.norms_sq[k2];
      p.base = -lam * p.norm_sum;
      p.c = ps.c(j, k2);
      p.s = ps.s(j, k2);
      p.invariant = invariant(ps.norms_sq[j], ps.norms_sq[k2], p.c, p.s);
      pairs_.push_back(p);
    }
  }
}

double StatisticEvaluator::pair_term(const Pair& p, double c_rot) const {
  const double psi_value = kernel_.is_gaussian()
                               ? std::exp(std::min(0.0, p.base + 2.0 * kernel_.lambda() * c_rot))
                               : kernel_.psi_from_squared(p.norm_sum - 2.0 * c_rot);
  return 2.0 * (psi_value - p.invariant);
}

double StatisticEvaluator::finish(const FixedPointSum& sum) const {
  const double t = 4.0 * kPi / static_cast<double>(n_) * sum.value();
  return clamp_statistic(t, n_);
}

double StatisticEvaluator::evaluate() const {
  FixedPointSum sum = diagonal_;
  for (const Pair& p : pairs_) sum.add(pair_term(p, p.c));
  return finish(sum);
}

double StatisticEvaluator::evaluate(std::span<const double> angles) const {
  if (angles.size() != n_) throw DomainError("statistic: one angle per observation required");
  std::vector<double> cos_a(n_), sin_a(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    cos_a[j] = std::cos(angles[j]);
    sin_a[j] = std::sin(angles[j]);
  }
  FixedPointSum sum = diagonal_;
  for (const Pair& p : pairs_) {
    // Delta = phi_k - phi_j; rotating z_j, z_k multiplies z_j^H z_k by e^{i Delta}.
    const double cos_d = cos_a[p.k] * cos_a[p.j] + sin_a[p.k] * sin_a[p.j];
    const double sin_d = sin_a[p.k] * cos_a[p.j] - cos_a[p.k] * sin_a[p.j];
    sum.add(pair_term(p, p.c * cos_d + p.s * sin_d));
  }
  return finish(sum);
}

double clamp_statistic(double t, std::size_t n) {
  if (t >= 0.0) return t;
  const double bound = 1e-10 * 4.0 * kPi * static_cast<double>(std::max<std::size_t>(n, 1));
  if (t < -bound || !std::isfinite(t)) {
    throw NumericError("statistic: negative value " + std::to_string(t) + " beyond round-off");
  }
  return 0.0;
}

double statistic_closed(const PairwiseSummaries& ps, const KernelSpec& k) {
  return StatisticEvaluator(ps, k, AngularMethod::ClosedForm).evaluate();
}

double statistic_quadrature(const PairwiseSummaries& ps, const KernelSpec& k) {
  return StatisticEvaluator(ps, k, AngularMethod::Quadrature).evaluate();
}

double statistic(const PairwiseSummaries& ps, const KernelSpec& k) {
  return k.is_gaussian() ? statistic_closed(ps, k) : statistic_quadrature(ps, k);
}

std::vector<double> profile_grid(std::size_t size) {
  if (size == 0) throw DomainError("profile_grid: size must be positive");
  std::vector<double> grid(size);
  const auto centre = static_cast<std::ptrdiff_t>(size / 2);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - centre) * kTwoPi /
              static_cast<double>(size);
  }
  return grid;
}

ThetaProfile theta_profile(const PairwiseSummaries& ps, const KernelSpec& k,
                           std::span<const double> grid, ThetaConvention convention) {
  for (double theta : grid) {
    if (!(theta >= -kPi && theta < kPi)) throw DomainError("theta_profile: grid must lie in [-pi, pi)");
  }
  if (convention == ThetaConvention::Section3 && !k.is_gaussian()) {
    throw UnsupportedError("theta_profile: Section3 convention requires a Gaussian kernel");
  }
  const std::size_t n = ps.n();
  const double lam = k.lambda();
  // Section3 replaces psi by (pi/lambda)^d exp(-xi^2 / (4 lambda)); the
  // constant is applied after summation.
  const double scale = convention == ThetaConvention::Section3
                           ? std::pow(kPi / lam, static_cast<double>(ps.d))
                           : 1.0;
  const KernelSpec profile_kernel =
      convention == ThetaConvention::Section3 ? KernelSpec::gaussian(0.25 / lam) : k;

  ThetaProfile out;
  out.convention = convention;
  out.thetas.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  for (double theta : grid) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    FixedPointSum sum;
    for (std::size_t j = 0; j < n; ++j) {
      const double nj = ps.norms_sq[j];
      // Diagonal: |W_j - M_theta W_j|^2 = 2 N_j (1 - cos theta).
      sum.add(1.0 - profile_kernel.psi_from_squared(2.0 * nj - 2.0 * nj * ct));
      for (std::size_t m = j + 1; m < n; ++m) {
        const double nsum = nj + ps.norms_sq[m];
        const double c = ps.c(j, m);
        const double s = ps.s(j, m);
        // Pair (j, m) at theta plus pair (m, j) at theta, i.e. (j, m) at -theta.
        const double base = profile_kernel.psi_from_squared(nsum - 2.0 * c);
        const double plus = profile_kernel.psi_from_squared(nsum - 2.0 * (c * ct + s * st));
        const double minus = profile_kernel.psi_from_squared(nsum - 2.0 * (c * ct - s * st));
        sum.add((base - plus) + (base - minus));
      }
    }
    out.values.push_back(2.0 / static_cast<double>(n) * scale * sum.value());
  }
  return out;
}

double large_lambda_scaled(const PairwiseSummaries& ps, double lambda, double theta, std::size_t d) {
  if (!(lambda > 0.0)) throw DomainError("large_lambda_scaled: lambda must be positive");
  (void)d;  // (2/pi^d) lambda^{d+1} (pi/lambda)^d = 2 lambda: d cancels.
  const std::size_t n = ps.n();
  const double st = std::sin(theta);
  const double one_minus_cos = 2.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta);
  const double inv4l = 0.25 / lambda;
  // sum over ordered (j, k) of exp(-a/(4 lambda)) - exp(-b/(4 lambda)) with
  // a = |W_j - W_k|^2 and b - a = 2 (C (1 - cos theta) - S sin theta).
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double c = ps.c(j, k);
      const double s = ps.s(j, k);
      const double a = std::max(0.0, ps.norms_sq[j] + ps.norms_sq[k] - 2.0 * c);
      const double gap = 2.0 * (c * one_minus_cos - s * st);
      sum += -std::exp(-a * inv4l) * std::expm1(-gap * inv4l);
    }
  }
  const double nn = static_cast<double>(n);
  // (2/pi^d) lambda^{d+1} * (2/n^2) (pi/lambda)^d * sum = 4 lambda sum / n^2.
  return 4.0 * lambda * sum / (nn * nn);
}

double large_lambda_limit(const ComplexSample& x, double theta) {
  const Eigen::VectorXd mean = x.embedding().colwise().mean().transpose();
  return 2.0 * (1.0 - std::cos(theta)) * mean.squaredNorm();
}

namespace {

struct OracleGrid {
  int panels_per_unit;  // Gauss-Legendre panels per unit of the oscillation scale
  double beta_factor;   // trapezoid points per unit of rho * max|W|
};

// G(rho) = int_beta int_theta |f(beta) - f(beta - theta)|^2 with
// f(beta) = phi_n(rho (cos beta, sin beta)), on a K-point periodic grid.
double angular_contrast(const ComplexSample& x, double rho, double max_norm, double beta_factor) {
  const std::size_t n = x.n();
  const Eigen::MatrixXd& w = x.embedding();
  const int k_points =
      2 * static_cast<int>(std::ceil(beta_factor * (rho * max_norm + 4.0 * std::cbrt(rho * max_norm + 1.0)) + 16.0));
  double sum_abs2 = 0.0;
  std::complex<double> sum_f = 0.0;
  for (int m = 0; m < k_points; ++m) {
    const double beta = kTwoPi * m / k_points;
    const double ux = rho * std::cos(beta);
    const double uy = rho * std::sin(beta);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = ux * w(j, 0) + uy * w(j, 1);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    const std::complex<double> f(re / n, im / n);
    sum_abs2 += std::norm(f);
    sum_f += f;
  }
  const double h = kTwoPi / k_points;
  return h * h * (2.0 * k_points * sum_abs2 - 2.0 * std::norm(sum_f));
}

double oracle_once(const ComplexSample& x, const KernelSpec& k, const OracleGrid& grid) {
  const std::size_t n = x.n();
  const Eigen::MatrixXd& w = x.embedding();
  double max_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) max_norm = std::max(max_norm, w.row(j).norm());
  if (max_norm == 0.0) return 0.0;

  const double lam = k.lambda();
  const bool gaussian = k.is_gaussian();
  // Radial density times the polar Jacobian rho.
  auto radial_weight = [&](double rho) {
    if (gaussian) return rho * std::exp(-rho * rho / (4.0 * lam)) / (4.0 * kPi * lam);
    return rho * lam / (kTwoPi * std::pow(lam * lam + rho * rho, 1.5));
  };
  const double radius = gaussian ? std::sqrt(4.0 * lam * 40.0) : 1000.0;

  // Oscillation in rho has frequency at most 2 max|W|.
  const double unit = kPi / (2.0 * max_norm + 1.0);
  const int panels = static_cast<int>(std::ceil(radius / unit)) * grid.panels_per_unit;
  const QuadratureRule& rule = cached_gauss_legendre(16);
  const double width = radius / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    total += rule.integrate(
        [&](double rho) { return radial_weight(rho) * angular_contrast(x, rho, max_norm, grid.beta_factor); },
        p * width, (p + 1) * width);
  }
  if (!gaussian) {
    // Beyond the radius G(rho) oscillates around (2 pi)^2 * 2 (E - Z^2) / n^2,
    // E = #ordered pairs with W_j = W_k, Z = #zero observations; the Cauchy
    // tail mass beyond the radius is lambda / sqrt(lambda^2 + radius^2).
    double equal_pairs = 0.0, zeros = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (w.row(j).squaredNorm() == 0.0) zeros += 1.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (w.row(j) == w.row(m)) equal_pairs += 1.0;
      }
    }
    const double nn = static_cast<double>(n);
    const double limit = kTwoPi * kTwoPi * 2.0 * (equal_pairs - zeros * zeros) / (nn * nn);
    total += limit * lam / (kTwoPi * std::sqrt(lam * lam + radius * radius));
  }
  return static_cast<double>(n) * total;
}

}  // namespace

double oracle_direct(const ComplexSample& x, const KernelSpec& k, const OracleOptions& options) {
  if (x.d() != 1 || x.n() > 4) throw DomainError("oracle_direct: cost guard requires d = 1 and n <= 4");
  if (!k.is_gaussian() && k.mu() != 1.0) {
    throw UnsupportedError("oracle_direct: only mu = 2 (Gaussian) and mu = 1 (Cauchy) weights");
  }
  OracleGrid grid{1, 1.25};
  double previous = oracle_once(x, k, grid);
  for (int level = 0; level < options.max_refinements; ++level) {
    grid.panels_per_unit *= 2;
    grid.beta_factor *= 1.5;
    const double current = oracle_once(x, k, grid);
    if (std::abs(current - previous) < options.tolerance) return current;
    previous = current;
  }
  throw NumericError("oracle_direct: no self-convergence");
}

double delta_estimate(double t, std::size_t n) {
  if (n == 0) throw DomainError("delta_estimate: n must be positive");
  return t / static_cast<double>(n);
}

}  // namespace circsym
