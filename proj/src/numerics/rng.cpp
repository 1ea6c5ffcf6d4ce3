#include "circsym/numerics/rng.hpp"

#include <cmath>
#include <numbers>

namespace circsym {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

PhiloxEngine::PhiloxEngine(std::uint64_t seed, std::uint64_t stream_id)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream_id) {}

PhiloxEngine::result_type PhiloxEngine::operator()() {
  if (available_ == 0) {
    const auto out = philox4x32_10({static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)},
                                    key_);
    ++block_;
    buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    available_ = 2;
  }
  return buffer_[2 - available_--];
}

double PhiloxEngine::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double PhiloxEngine::uniform_open_zero() {
  return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
}

double PhiloxEngine::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_zero()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream(seed_, splitmix64(splitmix64(stream_id_) ^ splitmix64(k ^ 0xA0761D6478BD642Full)));
}

std::uint64_t RngStream::derive_seed() const {
  return splitmix64(seed_ ^ splitmix64(stream_id_ + 0x8BB84B93962EACC9ull));
}

void fill_uniform_angles(PhiloxEngine& engine, std::vector<double>& out) {
  constexpr double kPi = std::numbers::pi;
  for (double& angle : out) {
    // -pi + 2 pi u rounds to at most the largest double below pi.
    angle = -kPi + 2.0 * kPi * engine.uniform();
    if (angle >= kPi) angle = -kPi;
  }
}

std::vector<double> rng_uniform_angles(const RngStream& stream, std::size_t n) {
  std::vector<double> out(n);
  PhiloxEngine engine = stream.engine();
  fill_uniform_angles(engine, out);
  return out;
}

}  // namespace circsym
