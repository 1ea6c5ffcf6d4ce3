#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "circsym/error.hpp"

namespace circsym {

/// Gauss-Legendre rule on [-1, 1]. Nodes are strictly increasing.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  /// Integrates f over [a, b] by the affine image of this rule.
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Computes the order-point Gauss-Legendre rule. Throws DomainError for order < 1.
QuadratureRule gauss_legendre(int order);

/// Shared, lazily built rule of the given order. Thread-safe; the returned
/// reference stays valid for the program lifetime.
const QuadratureRule& cached_gauss_legendre(int order);

/// Returns nodes and weights of `rule` mapped affinely onto [a, b].
QuadratureRule map_rule(const QuadratureRule& rule, double a, double b);

inline constexpr int kDefaultQuadratureOrder = 64;
inline constexpr int kMaxQuadratureOrder = 16384;

/// Gauss-Legendre on [a, b], starting at `start_order` and doubling until two
/// successive estimates agree to `rel_tol`. Returns the finer estimate.
/// Throws NumericError if `max_order` is reached without convergence.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                          int start_order = kDefaultQuadratureOrder,
                          int max_order = kMaxQuadratureOrder) {
  double previous = cached_gauss_legendre(start_order).integrate(f, a, b);
  for (int order = 2 * start_order; order <= max_order; order *= 2) {
    const double current = cached_gauss_legendre(order).integrate(f, a, b);
    if (std::abs(current - previous) <= rel_tol * std::abs(current)) return current;
    previous = current;
  }
  throw NumericError("integrate_adaptive: no convergence at order " + std::to_string(max_order));
}

/// Composite Gauss-Legendre on geometrically graded panels that shrink
/// towards `a` (panel i covers [a + h 2^-(i+1), a + h 2^-i], h = b - a), for
/// integrands with a cusp or near-singularity at the left endpoint. The
/// per-panel order starts at `start_order` and doubles until successive totals
/// agree to `rel_tol`.
template <class F>
double integrate_graded(F&& f, double a, double b, double rel_tol = 1e-10, int start_order = 8,
                        int max_order = 1024, int levels = 52) {
  auto total = [&](int order) {
    const QuadratureRule& rule = cached_gauss_legendre(order);
    const double h = b - a;
    double sum = 0.0;
    double hi = h;
    for (int i = 0; i < levels; ++i) {
      const double lo = 0.5 * hi;
      sum += rule.integrate(f, a + lo, a + hi);
      hi = lo;
    }
    return sum + rule.integrate(f, a, a + hi);
  };
  double previous = total(start_order);
  for (int order = 2 * start_order; order <= max_order; order *= 2) {
    const double current = total(order);
    if (std::abs(current - previous) <= rel_tol * std::abs(current)) return current;
    previous = current;
  }
  throw NumericError("integrate_graded: no convergence at order " + std::to_string(max_order));
}

}  // namespace circsym
