// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 5 7        run the listed criteria
// Exit status is non-zero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "circsym/bootstrap.hpp"
#include "circsym/numerics/parallel.hpp"
#include "circsym/numerics/rng.hpp"
#include "circsym/simulate.hpp"
#include "circsym/statistic.hpp"

using namespace circsym;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* spec, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, spec, a, b, c, d);
  return buf;
}

unsigned threads() { return default_thread_count(); }

ComplexSample normal_sample(std::size_t n, std::size_t d, PhiloxEngine& rng) {
  Eigen::MatrixXd w(n, 2 * d);
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.normal();
  return ComplexSample(w);
}

std::vector<double> angles(std::size_t n, PhiloxEngine& rng) {
  std::vector<double> a(n);
  fill_uniform_angles(rng, a);
  return a;
}

double median(std::vector<double> v) { return quantile_type7(std::move(v), 0.5); }
double iqr(const std::vector<double>& v) { return quantile_type7(v, 0.75) - quantile_type7(v, 0.25); }

CellResult cell(const DistributionSpec& spec, std::size_t n, double lambda, std::size_t m, std::uint64_t seed,
                std::size_t b = 200) {
  BootstrapConfig cfg;
  cfg.b = b;
  return level_power_cell(spec, n, KernelSpec::gaussian(lambda), m, cfg, 0.05, RngStream(seed, 0), threads());
}

// Band of +-3 binomial standard errors around a reference rate.
bool within_3se(double rate, double reference, std::size_t m) {
  return std::abs(rate - reference) <= 3.0 * std::sqrt(reference * (1.0 - reference) / static_cast<double>(m));
}

Outcome form_equivalence() {
  PhiloxEngine rng = RngStream(101, 0).engine();
  const double lambdas[] = {0.01, 0.1, 1.0};
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 30, d = 1 + rng() % 5;
    const auto ps = pairwise_summaries(normal_sample(n, d, rng));
    const auto k = KernelSpec::gaussian(lambdas[i % 3]);
    const double closed = statistic_closed(ps, k);
    const double quad = statistic_quadrature(ps, k);
    worst = std::max(worst, std::abs(closed - quad) / closed);
  }
  return {worst <= 1e-10, fmt("max relative difference %.3g over 500 samples (limit 1e-10)", worst)};
}

Outcome oracle_equivalence() {
  PhiloxEngine rng = RngStream(102, 0).engine();
  const double lambdas[] = {0.1, 0.5, 1.0};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 3;
    const auto x = normal_sample(n, 1, rng);
    const auto k = KernelSpec::gaussian(lambdas[(i / 3) % 3]);
    worst = std::max(worst, std::abs(statistic_closed(pairwise_summaries(x), k) - oracle_direct(x, k)));
  }
  return {worst <= 1e-4, fmt("max absolute difference %.3g over 20 samples (limit 1e-4)", worst)};
}

Outcome rotation_invariance() {
  PhiloxEngine rng = RngStream(103, 0).engine();
  const auto grid = profile_grid(64);
  double worst_t = 0.0, worst_d = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 25, d = 1 + rng() % 4;
    const auto x = normal_sample(n, d, rng);
    const double alpha = angles(1, rng)[0];
    const auto k = KernelSpec::gaussian(i % 2 ? 1.0 : 0.1);
    const auto ps = pairwise_summaries(x), pr = pairwise_summaries(x.rotated(alpha));
    worst_t = std::max(worst_t, std::abs(statistic_closed(ps, k) - statistic_closed(pr, k)));
    const auto a = theta_profile(ps, k, grid), b = theta_profile(pr, k, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) worst_d = std::max(worst_d, std::abs(a.values[g] - b.values[g]));
  }
  return {worst_t <= 1e-10 && worst_d <= 1e-10,
          fmt("max |dT| %.3g, max |dD| %.3g over 100 pairs (limit 1e-10)", worst_t, worst_d)};
}

Outcome bootstrap_equivalence() {
  PhiloxEngine rng = RngStream(104, 0).engine();
  const double lambdas[] = {0.01, 0.1, 1.0};
  double worst_sum = 0.0, worst_rep = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 20, d = 1 + rng() % 4;
    const auto x = normal_sample(n, d, rng);
    const auto a = angles(n, rng);
    const auto ps = pairwise_summaries(x);
    const auto rot = rotate_summaries(ps, a);
    const auto raw = pairwise_summaries(x.rotated(a));
    worst_sum = std::max({worst_sum, (rot.c - raw.c).cwiseAbs().maxCoeff(), (rot.s - raw.s).cwiseAbs().maxCoeff(),
                          (rot.norms_sq - raw.norms_sq).cwiseAbs().maxCoeff()});
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 20, d = 1 + rng() % 4;
    const auto ps = pairwise_summaries(normal_sample(n, d, rng));
    const auto a = angles(n, rng);
    const auto k = KernelSpec::gaussian(lambdas[i % 3]);
    const double fast = replicate_statistic(ps, k, a);
    const double generic = replicate_statistic_generic(ps, k, a);
    worst_rep = std::max(worst_rep, std::abs(fast - generic) / std::max(1.0, std::abs(generic)));
  }
  return {worst_sum <= 1e-12 && worst_rep <= 1e-10,
          fmt("summaries max diff %.3g (limit 1e-12); replicates max rel diff %.3g (limit 1e-10)", worst_sum,
              worst_rep)};
}

Outcome empirical_level() {
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 105;
  for (double lambda : {0.01, 0.1, 1.0}) {
    const auto c = cell(ShiftedCN2{0.0}, 50, lambda, 2000, seed++);
    pass &= std::abs(c.rate - 0.05) <= 0.015;
    detail += fmt("lambda=%g: %.4f  ", lambda, c.rate);
  }
  return {pass, detail + "(band 0.05 +- 0.015)"};
}

Outcome circle_level() {
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 1060;
  for (std::size_t n : {10, 50}) {
    for (double lambda : {0.01, 0.1, 1.0}) {
      const auto c = cell(CircleUniform{}, n, lambda, 2000, seed++);
      pass &= c.rate >= 0.035 && c.rate <= 0.072;
      detail += fmt("n=%g lambda=%g: %.4f  ", static_cast<double>(n), lambda, c.rate);
    }
  }
  return {pass, detail + "(band [0.035, 0.072])"};
}

Outcome discrete_power() {
  const auto strong = cell(Discrete4{}, 50, 1.0, 500, 107);
  const auto weak = cell(Discrete4{}, 50, 0.1, 500, 1071);
  const bool pass = strong.rate >= 0.98 && std::abs(weak.rate - 0.056) <= 0.03;
  return {pass, fmt("lambda=1: %.4f (>= 0.98); lambda=0.1: %.4f (0.056 +- 0.03)", strong.rate, weak.rate)};
}

Outcome shifted_mean_power() {
  const double reference[] = {0.0517, 0.5895, 0.9985};
  const double shifts[] = {0.0, 0.2, 0.4};
  bool pass = true;
  double previous = -1.0;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const auto c = cell(ShiftedCN2{shifts[i]}, 50, 0.01, 1000, 108 + i);
    pass &= c.rate > previous && within_3se(c.rate, reference[i], 1000);
    previous = c.rate;
    detail += fmt("u=%g: %.4f (reference %.4f)  ", shifts[i], c.rate, reference[i]);
  }
  return {pass, detail + "(monotone, within 3 SE)"};
}

Outcome contaminated_power() {
  const auto a = cell(Contaminated{}, 100, 1.0, 500, 109);
  const auto b = cell(Contaminated{}, 100, 0.01, 500, 1091);
  const bool pass = within_3se(a.rate, 0.1078, 500) && within_3se(b.rate, 0.0536, 500);
  return {pass, fmt("lambda=1: %.4f (reference 0.1078); lambda=0.01: %.4f (reference 0.0536); within 3 SE", a.rate, b.rate)};
}

Outcome large_lambda() {
  PhiloxEngine rng = RngStream(110, 0).engine();
  bool pass = true;
  double worst_ratio = 0.0;
  int non_monotone = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 2, n = 2 + rng() % 10;
    const auto x = normal_sample(n, d, rng);
    const auto ps = pairwise_summaries(x);
    double theta = angles(1, rng)[0];
    const double limit = large_lambda_limit(x, theta);
    const double mean_sq = limit / (2.0 * (1.0 - std::cos(theta)));
    double previous = INFINITY, err = 0.0;
    for (double lambda : {10.0, 1e2, 1e3, 1e4}) {
      err = std::abs(large_lambda_scaled(ps, lambda, theta, d) - limit);
      if (!(err < previous)) ++non_monotone;
      previous = err;
    }
    worst_ratio = std::max(worst_ratio, err / (1e-3 * (1.0 + mean_sq)));
  }
  pass = non_monotone == 0 && worst_ratio < 1.0;
  return {pass, fmt("%g non-decreasing steps; worst error at 1e4 is %.3g of the 1e-3 (1 + |Wbar|^2) bound",
                    non_monotone, worst_ratio)};
}

Outcome consistency() {
  const auto k = KernelSpec::gaussian(1.0);
  auto deltas = [&](const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    std::vector<double> out(100);
    const Sampler sampler(spec);
    parallel_for(out.size(), threads(), [&](std::size_t r) {
      const auto x = sampler.draw(n, RngStream(seed, r));
      out[r] = delta_estimate(statistic_closed(pairwise_summaries(x), k), n);
    });
    return out;
  };
  const double m100 = median(deltas(CircleUniform{}, 100, 111));
  const double m1000 = median(deltas(CircleUniform{}, 1000, 1111));
  const auto d400 = deltas(Discrete4{}, 400, 1112);
  const auto d800 = deltas(Discrete4{}, 800, 1113);
  const double med400 = median(d400), med800 = median(d800);
  const bool null_ok = m100 >= 2.0 * m1000;
  const bool alt_ok = iqr(d800) < iqr(d400) && std::abs(med800 - med400) <= 0.1 * med400;
  return {null_ok && alt_ok,
          fmt("circle: median T/n %.4g (n=100) vs %.4g (n=1000); ", m100, m1000) +
              fmt("discrete: IQR %.4g -> %.4g, median %.4g -> %.4g", iqr(d400), iqr(d800), med400, med800)};
}

Outcome p_value_uniformity() {
  const std::size_t runs = 500, b = 199;
  const auto k = KernelSpec::gaussian(1.0);
  std::vector<std::size_t> exceed(runs);
  const Sampler sampler(CircleUniform{});
  const RngStream master(112, 0);
  parallel_for(runs, threads(), [&](std::size_t r) {
    const RngStream s = master.substream(r);
    BootstrapConfig cfg;
    cfg.b = b;
    cfg.seed = s.derive_seed();
    exceed[r] = bootstrap_test(sampler.draw(50, s), k, cfg).exceed_count;
  });
  // Under the null the p-value is uniform on {1, ..., B+1} / (B+1); both
  // CDFs are step functions on that lattice, so the sup is taken there.
  std::vector<std::size_t> counts(b + 1, 0);
  for (std::size_t e : exceed) ++counts[e];
  double ks = 0.0, cum = 0.0;
  for (std::size_t j = 0; j <= b; ++j) {
    cum += static_cast<double>(counts[j]) / runs;
    ks = std::max(ks, std::abs(cum - static_cast<double>(j + 1) / (b + 1)));
  }
  return {ks < 0.075, fmt("KS distance %.4f (limit 0.075)", ks)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {"form equivalence", form_equivalence},
    {"oracle equivalence", oracle_equivalence},
    {"rotation invariance", rotation_invariance},
    {"bootstrap summary equivalence", bootstrap_equivalence},
    {"empirical level, shifted CN2 u=0", empirical_level},
    {"circle-uniform level", circle_level},
    {"discrete alternative power", discrete_power},
    {"shifted-mean power trend", shifted_mean_power},
    {"contaminated alternative", contaminated_power},
    {"large-lambda limit", large_lambda},
    {"consistency of T_n/n", consistency},
    {"p-value uniformity under the null", p_value_uniformity},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) selected.push_back(i);
  }
  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto& c = kCriteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
