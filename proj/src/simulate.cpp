#include "circsym/simulate.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "circsym/error.hpp"
#include "circsym/numerics/parallel.hpp"

namespace circsym {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(Overloaded{
                 [](const ScalarGaussianRho& g) {
                   if (!std::isfinite(std::abs(g.rho)) || std::abs(g.rho) > 1.0 + 1e-12) {
                     throw DomainError("scalar_gaussian: |rho| must be <= 1");
                   }
                   if (!(g.czz > 0.0) || !std::isfinite(g.czz)) {
                     throw DomainError("scalar_gaussian: czz must be positive");
                   }
                 },
                 [](const ShiftedCN2& s) {
                   if (!std::isfinite(s.u)) throw DomainError("shifted_cn2: u must be finite");
                 },
                 [](const HighDimCN& h) {
                   if (h.d < 1) throw DomainError("highdim_cn: d must be >= 1");
                 },
                 [](const auto&) {},
             },
             spec);
}

std::size_t dimension(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const ShiftedCN2&) -> std::size_t { return 2; },
                        [](const HighDimCN& h) -> std::size_t { return h.d; },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    spec);
}

std::string distribution_name(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const ScalarGaussianRho&) { return std::string("scalar_gaussian"); },
                        [](const ShiftedCN2&) { return std::string("shifted_cn2"); },
                        [](const Discrete4&) { return std::string("discrete4"); },
                        [](const CircleUniform&) { return std::string("circle_uniform"); },
                        [](const Contaminated&) { return std::string("contaminated"); },
                        [](const HighDimCN&) { return std::string("highdim_cn"); },
                    },
                    spec);
}

Eigen::MatrixXd highdim_mixing_matrix(std::size_t d, std::uint64_t a_seed) {
  PhiloxEngine engine = RngStream(a_seed, 0).engine();
  Eigen::MatrixXd a(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a(r, c) = engine.uniform();
  }
  return a;
}

Eigen::MatrixXd augmented_covariance(const Eigen::MatrixXcd& gamma, const Eigen::MatrixXcd& pseudo) {
  const Eigen::Index d = gamma.rows();
  Eigen::MatrixXd cov(2 * d, 2 * d);
  cov.topLeftCorner(d, d) = 0.5 * (gamma.real() + pseudo.real());
  cov.bottomRightCorner(d, d) = 0.5 * (gamma.real() - pseudo.real());
  cov.topRightCorner(d, d) = 0.5 * (pseudo.imag() - gamma.imag());
  cov.bottomLeftCorner(d, d) = 0.5 * (pseudo.imag() + gamma.imag());
  return cov;
}

Sampler::Sampler(DistributionSpec spec) : spec_(std::move(spec)), d_(circsym::dimension(spec_)) {
  validate(spec_);
  if (const auto* h = std::get_if<HighDimCN>(&spec_)) {
    const Eigen::MatrixXd a = highdim_mixing_matrix(h->d, h->a_seed);
    const Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Ones(h->d, h->d);
    const Eigen::MatrixXcd pseudo = std::complex<double>(0.0, 1.0) * (a.transpose() * a).cast<std::complex<double>>();
    const PsdFactor f = psd_factor(augmented_covariance(gamma, pseudo), kPseudoCovarianceTolerance, h->policy);
    factor_ = f.factor;
    clipped_ = f.clipped;
    min_eigenvalue_ = f.min_eigenvalue;
  }
}

ComplexSample Sampler::draw(std::size_t n, const RngStream& stream) const {
  if (n == 0) throw DomainError("sample: n must be positive");
  PhiloxEngine rng = stream.engine();
  const Eigen::Index d = static_cast<Eigen::Index>(d_);
  Eigen::MatrixXd w(static_cast<Eigen::Index>(n), 2 * d);
  std::visit(
      Overloaded{
          [&](const ScalarGaussianRho& g) {
            const double re = g.rho.real();
            const double sx = std::sqrt(std::max(0.0, 0.5 * g.czz * (1.0 + re)));
            const double sy = std::sqrt(std::max(0.0, 0.5 * g.czz * (1.0 - re)));
            double rxy = 0.0;
            if (std::abs(re) < 1.0) rxy = std::clamp(g.rho.imag() / std::sqrt(1.0 - re * re), -1.0, 1.0);
            const double rest = std::sqrt(1.0 - rxy * rxy);
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              const double g1 = rng.normal();
              const double g2 = rng.normal();
              w(j, 0) = sx * g1;
              w(j, 1) = sy * (rxy * g1 + rest * g2);
            }
          },
          [&](const ShiftedCN2& s) {
            const double sd = std::sqrt(0.5);
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              for (Eigen::Index i = 0; i < 2; ++i) w(j, i) = s.u + sd * rng.normal();
              for (Eigen::Index i = 2; i < 4; ++i) w(j, i) = sd * rng.normal();
            }
          },
          [&](const Discrete4&) {
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              const std::uint64_t bits = rng() >> 62;
              w(j, 0) = (bits & 1u) ? -1.0 : 1.0;
              w(j, 1) = (bits & 2u) ? -1.0 : 1.0;
            }
          },
          [&](const CircleUniform&) {
            std::vector<double> phi(n);
            fill_uniform_angles(rng, phi);
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              w(j, 0) = std::cos(phi[j]);
              w(j, 1) = std::sin(phi[j]);
            }
          },
          [&](const Contaminated&) {
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              const double radius = rng.uniform();
              const double pick = rng.uniform();
              double angle;
              if (pick < 1.0 / 6.0) {
                angle = 0.0;
              } else if (pick < 2.0 / 6.0) {
                angle = 2.0 * kPi / 3.0;
              } else if (pick < 3.0 / 6.0) {
                angle = 4.0 * kPi / 3.0;
              } else {
                angle = 2.0 * kPi * rng.uniform();
              }
              w(j, 0) = radius * std::cos(angle);
              w(j, 1) = radius * std::sin(angle);
            }
          },
          [&](const HighDimCN&) {
            Eigen::VectorXd g(2 * d);
            for (Eigen::Index j = 0; j < w.rows(); ++j) {
              for (Eigen::Index i = 0; i < 2 * d; ++i) g[i] = rng.normal();
              w.row(j) = (factor_ * g).transpose();
            }
          },
      },
      spec_);
  return ComplexSample(std::move(w));
}

ComplexSample sample(const DistributionSpec& spec, std::size_t n, const RngStream& stream) {
  return Sampler(spec).draw(n, stream);
}

CellResult level_power_cell(const Sampler& sampler, std::size_t n, const KernelSpec& k,
                            std::size_t m, const BootstrapConfig& cfg, double alpha,
                            const RngStream& stream, unsigned threads) {
  if (m == 0) throw DomainError("level_power_cell: m must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("level_power_cell: alpha must lie in (0, 1)");
  std::vector<unsigned char> rejected(m, 0);
  parallel_for(m, threads, [&](std::size_t r) {
    const RngStream replication = stream.substream(r);
    const ComplexSample x = sampler.draw(n, replication);
    BootstrapConfig inner = cfg;
    inner.seed = replication.derive_seed();
    inner.keep_replicates = false;
    inner.threads = 1;
    rejected[r] = bootstrap_test(x, k, inner).p_value <= alpha ? 1 : 0;
  });
  CellResult cell;
  cell.m = m;
  for (unsigned char flag : rejected) cell.rejections += flag;
  cell.rate = static_cast<double>(cell.rejections) / static_cast<double>(m);
  cell.standard_error = std::sqrt(cell.rate * (1.0 - cell.rate) / static_cast<double>(m));
  return cell;
}

CellResult level_power_cell(const DistributionSpec& spec, std::size_t n, const KernelSpec& k,
                            std::size_t m, const BootstrapConfig& cfg, double alpha,
                            const RngStream& stream, unsigned threads) {
  return level_power_cell(Sampler(spec), n, k, m, cfg, alpha, stream, threads);
}

}  // namespace circsym
