#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "circsym/error.hpp"
#include "circsym/numerics/accumulate.hpp"
#include "circsym/numerics/bessel.hpp"
#include "circsym/numerics/parallel.hpp"
#include "circsym/numerics/psd.hpp"
#include "circsym/numerics/quadrature.hpp"
#include "circsym/numerics/rng.hpp"
#include "helpers.hpp"

using namespace circsym;

TEST_CASE("bessel_i0_scaled examples") {
  CHECK(bessel_i0_scaled(0.0) == 1.0);
  CHECK(std::abs(bessel_i0_scaled(2.0) - testing::i0e_series(2.0)) <= 1e-12);
  const double big = bessel_i0_scaled(700.0);
  CHECK(std::isfinite(big));
  // two-term asymptotic expansion; the second term is 1/(8t) relative
  const double asym = 1.0 / std::sqrt(2.0 * M_PI * 700.0) * (1.0 + 1.0 / (8.0 * 700.0));
  CHECK(std::abs(big - asym) / asym <= 1e-6);
}

TEST_CASE("bessel_i0_scaled matches the series oracle around the crossover") {
  for (double t = 0.0; t <= 40.0; t += 0.125) {
    CAPTURE(t);
    CHECK(std::abs(bessel_i0_scaled(t) - testing::i0e_series(t)) <= 1e-12);
  }
  for (double t : {kBesselI0Crossover - 1e-9, kBesselI0Crossover, kBesselI0Crossover + 1e-9}) {
    CHECK(std::abs(bessel_i0_scaled(t) - testing::i0e_series(t)) <= 1e-12);
  }
}

TEST_CASE("bessel_i0_scaled is monotone and bounded on [0, 1e4]") {
  double previous = bessel_i0_scaled(0.0);
  for (double t = 0.01; t <= 1e4; t *= 1.01) {
    const double v = bessel_i0_scaled(t);
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE(v <= previous);
    previous = v;
  }
}

TEST_CASE("bessel_i0_scaled rejects bad input") {
  CHECK_THROWS_AS(bessel_i0_scaled(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_i0_scaled(NAN), DomainError);
  CHECK_THROWS_AS(bessel_i0_scaled(INFINITY), DomainError);
}

TEST_CASE("gauss_legendre examples") {
  const auto r1 = gauss_legendre(1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));
  CHECK(std::abs(gauss_legendre(5).integrate([](double t) { return std::cos(t); }, 0.0, M_PI)) <= 1e-12);
  const double got = gauss_legendre(64).integrate([](double t) { return std::exp(std::cos(t)); }, 0.0, 2 * M_PI);
  const double want = 2 * M_PI * testing::i0e_series(1.0) * std::exp(1.0);
  CHECK(std::abs(got - want) <= 1e-10);
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("gauss_legendre rules are exact for degree <= 2k-1") {
  for (int k = 1; k <= 20; ++k) {
    const auto rule = gauss_legendre(k);
    CHECK(std::abs(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0) - 2.0) <= 1e-12);
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    for (int j = 0; j <= 2 * k - 1; ++j) {
      const double got = rule.integrate([j](double x) { return std::pow(x, j); }, -1.0, 1.0);
      const double want = (j % 2 == 1) ? 0.0 : 2.0 / (j + 1);
      CAPTURE(k);
      CAPTURE(j);
      CHECK(std::abs(got - want) <= 1e-10);
    }
  }
}

TEST_CASE("map_rule and adaptive integration") {
  const auto mapped = map_rule(gauss_legendre(8), 1.0, 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < mapped.nodes.size(); ++i) sum += mapped.weights[i] * mapped.nodes[i] * mapped.nodes[i];
  CHECK(sum == doctest::Approx(26.0 / 3.0).epsilon(1e-13));
  const double v = integrate_adaptive([](double t) { return std::exp(-t * t); }, -10.0, 10.0);
  CHECK(std::abs(v - std::sqrt(M_PI)) <= 1e-12);
  // a cusp at 0: sqrt(t) on [0, 1]
  const double g = integrate_graded([](double t) { return std::sqrt(t); }, 0.0, 1.0);
  CHECK(std::abs(g - 2.0 / 3.0) <= 1e-12);
}

TEST_CASE("psd_factor examples") {
  const auto id = psd_factor(Eigen::MatrixXd::Identity(3, 3), 1e-10);
  CHECK(id.clipped == 0);
  CHECK((id.factor * id.factor.transpose() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
  const auto r1 = psd_factor(ones, 1e-10);
  CHECK(r1.clipped == 2);
  CHECK((r1.factor * r1.factor.transpose() - ones).cwiseAbs().maxCoeff() <= 1e-10);

  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  try {
    psd_factor(bad, 1e-10);
    FAIL("expected NotPsdError");
  } catch (const NotPsdError& e) {
    CHECK(e.eigenvalue() == doctest::Approx(-1.0));
  }
  const auto projected = psd_factor(bad, 1e-10, PsdPolicy::Project);
  CHECK(projected.clipped == 1);
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(2, 2);
  want(0, 0) = 1.0;
  CHECK((projected.factor * projected.factor.transpose() - want).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(psd_factor(asym, 1e-10), DomainError);
}

TEST_CASE("psd_factor reconstructs random PSD matrices") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    const int rank = 1 + trial % n;
    Eigen::MatrixXd b(n, rank);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < rank; ++j) b(i, j) = normal(gen);
    const Eigen::MatrixXd m = b * b.transpose();
    const auto f = psd_factor(m, 1e-10 * m.cwiseAbs().maxCoeff(), PsdPolicy::Project);
    CHECK((f.factor * f.factor.transpose() - m).cwiseAbs().maxCoeff() <= 1e-8 * m.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("philox known-answer vectors") {
  // Random123 kat_vectors, philox4x32 10 rounds
  const auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  const auto ones = philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  const auto pi = philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("rng_uniform_angles examples") {
  CHECK(rng_uniform_angles(RngStream(1, 2), 0).empty());
  CHECK(rng_uniform_angles(RngStream(1, 2), 100) == rng_uniform_angles(RngStream(1, 2), 100));
  const std::size_t n = 100000;
  const auto a = rng_uniform_angles(RngStream(3, 0), n);
  double mean_cos = 0.0;
  for (double v : a) {
    REQUIRE(v >= -M_PI);
    REQUIRE(v < M_PI);
    mean_cos += std::cos(v);
  }
  mean_cos /= n;
  CHECK(std::abs(mean_cos) <= 3.0 * std::sqrt(1.0 / (2.0 * n)));
}

TEST_CASE("distinct streams are uncorrelated") {
  const std::size_t n = 100000;
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto e1 = RngStream(5, s).engine();
    auto e2 = RngStream(5, s + 1).engine();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = e1.uniform(), y = e2.uniform();
      sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
    }
    const double cov = sxy / n - sx / n * sy / n;
    const double r = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(r) < 0.01);
  }
  CHECK(RngStream(5, 0).substream(1) != RngStream(5, 0).substream(2));
  CHECK(RngStream(5, 0).derive_seed() != RngStream(5, 1).derive_seed());
}

TEST_CASE("normal variates have unit variance") {
  auto e = RngStream(9, 0).engine();
  const int n = 200000;
  double s = 0, ss = 0;
  for (int i = 0; i < n; ++i) {
    const double z = e.normal();
    s += z;
    ss += z * z;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(ss / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("FixedPointSum is order independent") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-3.9, 3.9);
  std::vector<double> v(1000);
  for (auto& x : v) x = u(gen);
  FixedPointSum a, b;
  for (double x : v) a.add(x);
  std::shuffle(v.begin(), v.end(), gen);
  for (double x : v) b.add(x);
  CHECK(a.value() == b.value());
  CHECK(a.value() == doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-12));
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw NumericError("x"); }), NumericError);
}
