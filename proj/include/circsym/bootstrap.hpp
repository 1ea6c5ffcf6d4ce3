#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "circsym/kernel.hpp"
#include "circsym/sample.hpp"
#include "circsym/statistic.hpp"

namespace circsym {

inline constexpr std::size_t kDefaultBootstrapReplicates = 200;

struct BootstrapConfig {
  std::size_t b = kDefaultBootstrapReplicates;
  std::uint64_t seed = 0;
  bool keep_replicates = false;
  /// Worker threads for replicate evaluation. Results do not depend on it.
  unsigned threads = 1;
};

struct TestResult {
  double statistic = 0.0;
  /// (1 + #{T*_b >= T}) / (B + 1).
  double p_value = 1.0;
  std::size_t exceed_count = 0;
  std::vector<double> replicates;  // empty unless keep_replicates
  KernelSpec kernel = KernelSpec::gaussian(1.0);
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::size_t b = 0;
};

/// Summaries of {M_{phi_j} W_j}: norms unchanged, and with
/// Delta_jk = phi_k - phi_j, C' = C cos Delta + S sin Delta and
/// S' = S cos Delta - C sin Delta. O(n^2), independent of d.
PairwiseSummaries rotate_summaries(const PairwiseSummaries& ps, std::span<const double> angles);

/// Bootstrap replicate via the rotation-invariant decomposition: only
/// psi(|W'_j - W'_k|) is recomputed from the rotated C'.
double replicate_statistic(const PairwiseSummaries& ps, const KernelSpec& k,
                           std::span<const double> angles);

/// Same replicate through statistic_quadrature on fully rotated summaries.
double replicate_statistic_generic(const PairwiseSummaries& ps, const KernelSpec& k,
                                   std::span<const double> angles);

/// Angles of replicate `index`: uniform on [-pi, pi) from stream (seed, index).
std::vector<double> replicate_angles(std::uint64_t seed, std::size_t index, std::size_t n);

/// Monte Carlo p-value (1 + exceed_count) / (b + 1).
double monte_carlo_p_value(std::size_t exceed_count, std::size_t b);

/// Random-rotation bootstrap test of circular symmetry. Replicate b draws its
/// angles from stream (cfg.seed, b), so the result is a deterministic function
/// of (data, kernel, seed, B) for any thread count. Ties count as exceedances.
/// Throws DomainError for B = 0.
TestResult bootstrap_test(const ComplexSample& x, const KernelSpec& k, const BootstrapConfig& cfg);
TestResult bootstrap_test(const PairwiseSummaries& ps, const KernelSpec& k, const BootstrapConfig& cfg);

/// Type-7 (linear interpolation) sample quantile, q in [0, 1].
double quantile_type7(std::vector<double> values, double q);

/// Pointwise q-quantile over B rotation replicates of the D(theta) profile.
std::vector<double> null_band(const PairwiseSummaries& ps, const KernelSpec& k,
                              std::span<const double> grid, const BootstrapConfig& cfg, double q,
                              ThetaConvention convention = ThetaConvention::Section2);

/// Variant with caller-supplied angle arrays, one per replicate.
std::vector<double> null_band(const PairwiseSummaries& ps, const KernelSpec& k,
                              std::span<const double> grid,
                              const std::vector<std::vector<double>>& angle_sets, double q,
                              ThetaConvention convention = ThetaConvention::Section2,
                              unsigned threads = 1);

}  // namespace circsym
