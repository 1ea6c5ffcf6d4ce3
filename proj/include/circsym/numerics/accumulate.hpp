#pragma once

#include <cmath>

#include "circsym/error.hpp"

namespace circsym {

/// Order-independent sum of terms bounded by |x| < 4.
///
/// Each term is rounded to a multiple of 2^-60 and accumulated in a 128-bit
/// integer, so the result is bit-identical for any summation order or
/// partition into partial sums.
class FixedPointSum {
 public:
  static constexpr int kFractionBits = 60;
  static constexpr double kBound = 4.0;

  void add(double x) {
    if (!(std::abs(x) < kBound)) throw NumericError("FixedPointSum: term out of range");
    acc_ += static_cast<__int128>(std::llrint(std::ldexp(x, kFractionBits)));
  }
  void merge(const FixedPointSum& other) { acc_ += other.acc_; }
  double value() const { return std::ldexp(static_cast<double>(acc_), -kFractionBits); }

 private:
  __int128 acc_ = 0;
};

}  // namespace circsym
