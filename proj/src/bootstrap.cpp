#include "circsym/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "circsym/error.hpp"
#include "circsym/numerics/parallel.hpp"
#include "circsym/numerics/rng.hpp"

namespace circsym {

PairwiseSummaries rotate_summaries(const PairwiseSummaries& ps, std::span<const double> angles) {
  const std::size_t n = ps.n();
  if (angles.size() != n) throw DomainError("rotate_summaries: one angle per observation required");
  PairwiseSummaries out = ps;
  std::vector<double> cos_a(n), sin_a(n);
  for (std::size_t j = 0; j < n; ++j) {
    cos_a[j] = std::cos(angles[j]);
    sin_a[j] = std::sin(angles[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double cos_d = cos_a[k] * cos_a[j] + sin_a[k] * sin_a[j];
      const double sin_d = sin_a[k] * cos_a[j] - cos_a[k] * sin_a[j];
      const double c = ps.c(j, k);
      const double s = ps.s(j, k);
      const double c_rot = c * cos_d + s * sin_d;
      const double s_rot = s * cos_d - c * sin_d;
      out.c(j, k) = c_rot;
      out.c(k, j) = c_rot;
      out.s(j, k) = s_rot;
      out.s(k, j) = -s_rot;
    }
  }
  return out;
}

namespace {

AngularMethod preferred_method(const KernelSpec& k) {
  return k.is_gaussian() ? AngularMethod::ClosedForm : AngularMethod::Quadrature;
}

}  // namespace

double replicate_statistic(const PairwiseSummaries& ps, const KernelSpec& k,
                           std::span<const double> angles) {
  return StatisticEvaluator(ps, k, preferred_method(k)).evaluate(angles);
}

double replicate_statistic_generic(const PairwiseSummaries& ps, const KernelSpec& k,
                                   std::span<const double> angles) {
  return statistic_quadrature(rotate_summaries(ps, angles), k);
}

std::vector<double> replicate_angles(std::uint64_t seed, std::size_t index, std::size_t n) {
  return rng_uniform_angles(RngStream(seed, index), n);
}

double monte_carlo_p_value(std::size_t exceed_count, std::size_t b) {
  return (1.0 + static_cast<double>(exceed_count)) / (static_cast<double>(b) + 1.0);
}

TestResult bootstrap_test(const ComplexSample& x, const KernelSpec& k, const BootstrapConfig& cfg) {
  TestResult result = bootstrap_test(pairwise_summaries(x), k, cfg);
  result.d = x.d();
  return result;
}

TestResult bootstrap_test(const PairwiseSummaries& ps, const KernelSpec& k, const BootstrapConfig& cfg) {
  if (cfg.b == 0) throw DomainError("bootstrap_test: B must be at least 1");
  const std::size_t n = ps.n();
  const StatisticEvaluator evaluator(ps, k, preferred_method(k));

  TestResult result;
  result.kernel = k;
  result.n = n;
  result.d = ps.d;
  result.seed = cfg.seed;
  result.b = cfg.b;
  result.statistic = evaluator.evaluate();

  std::vector<double> replicates(cfg.b);
  parallel_for(cfg.b, cfg.threads, [&](std::size_t b) {
    PhiloxEngine engine = RngStream(cfg.seed, b).engine();
    std::vector<double> angles(n);
    fill_uniform_angles(engine, angles);
    replicates[b] = evaluator.evaluate(angles);
  });
  result.exceed_count = static_cast<std::size_t>(
      std::count_if(replicates.begin(), replicates.end(),
                    [&](double t) { return t >= result.statistic; }));
  result.p_value = monte_carlo_p_value(result.exceed_count, cfg.b);
  if (cfg.keep_replicates) result.replicates = std::move(replicates);
  return result;
}

double quantile_type7(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<double> null_band(const PairwiseSummaries& ps, const KernelSpec& k,
                              std::span<const double> grid,
                              const std::vector<std::vector<double>>& angle_sets, double q,
                              ThetaConvention convention, unsigned threads) {
  if (angle_sets.empty()) throw DomainError("null_band: at least one replicate is required");
  std::vector<std::vector<double>> profiles(angle_sets.size());
  parallel_for(angle_sets.size(), threads, [&](std::size_t b) {
    profiles[b] = theta_profile(rotate_summaries(ps, angle_sets[b]), k, grid, convention).values;
  });
  std::vector<double> band(grid.size());
  std::vector<double> column(angle_sets.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t b = 0; b < profiles.size(); ++b) column[b] = profiles[b][i];
    band[i] = quantile_type7(column, q);
  }
  return band;
}

std::vector<double> null_band(const PairwiseSummaries& ps, const KernelSpec& k,
                              std::span<const double> grid, const BootstrapConfig& cfg, double q,
                              ThetaConvention convention) {
  if (cfg.b == 0) throw DomainError("null_band: B must be at least 1");
  std::vector<std::vector<double>> angle_sets(cfg.b);
  for (std::size_t b = 0; b < cfg.b; ++b) angle_sets[b] = replicate_angles(cfg.seed, b, ps.n());
  return null_band(ps, k, grid, angle_sets, q, convention, cfg.threads);
}

}  // namespace circsym
