#include "circsym/numerics/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "circsym/error.hpp"

namespace circsym {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double series_scaled(double t) {
  const double q = 0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < kEps * 0.25 * sum) break;
  }
  return std::exp(-t) * sum;
}

// e^{-t} I0(t) ~ (2 pi t)^{-1/2} sum_k [(2k-1)!!]^2 / (k! (8t)^k); all terms
// positive, truncated at the smallest term.
double asymptotic_scaled(double t) {
  const double inv8t = 1.0 / (8.0 * t);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double ratio = odd * odd * inv8t / k;
    if (ratio >= 1.0) break;
    term *= ratio;
    sum += term;
    if (term < kEps * 0.25 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace

double bessel_i0_scaled(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("bessel_i0_scaled: argument must be finite and non-negative");
  }
  if (t <= kBesselI0Crossover) return series_scaled(t);
  return asymptotic_scaled(t);
}

}  // namespace circsym
