#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace circsym {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Each 128-bit counter value maps to four independent 32-bit words.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Sequential engine over one Philox stream. Satisfies
/// UniformRandomBitGenerator. The key is the seed; the upper 64 counter bits
/// hold the stream id and the lower 64 bits the block index.
class PhiloxEngine {
 public:
  using result_type = std::uint64_t;

  PhiloxEngine(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in (0, 1].
  double uniform_open_zero();
  /// Standard normal variate (Box-Muller, both outputs used).
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Immutable descriptor of a reproducible random stream. Identical
/// (seed, stream_id) pairs reproduce identical sequences; distinct stream ids
/// select disjoint counter ranges of the same key.
class RngStream {
 public:
  constexpr RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {}

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t stream_id() const { return stream_id_; }

  PhiloxEngine engine() const { return PhiloxEngine(seed_, stream_id_); }

  /// Child stream for index k, under the same seed.
  RngStream substream(std::uint64_t k) const;

  /// A 64-bit seed derived from this stream, for handing to components that
  /// open their own (seed, id) streams.
  std::uint64_t derive_seed() const;

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

/// n i.i.d. angles uniform on [-pi, pi).
std::vector<double> rng_uniform_angles(const RngStream& stream, std::size_t n);

/// Fills `out` with i.i.d. uniform angles on [-pi, pi) from `engine`.
void fill_uniform_angles(PhiloxEngine& engine, std::vector<double>& out);

}  // namespace circsym
