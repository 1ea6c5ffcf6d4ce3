#pragma once

namespace circsym {

/// Exponentially scaled modified Bessel function of the first kind of order
/// zero, exp(-t) * I0(t), for finite t >= 0.
///
/// Uses the power series sum_k (t^2/4)^k / (k!)^2 up to t = 15 and the
/// large-argument asymptotic expansion beyond. The result lies in (0, 1] and
/// never overflows. Throws DomainError for negative or non-finite t.
double bessel_i0_scaled(double t);

/// Argument at which bessel_i0_scaled switches from series to asymptotics.
inline constexpr double kBesselI0Crossover = 15.0;

}  // namespace circsym
