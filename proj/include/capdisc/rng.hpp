#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace capdisc {

/// Counter-based deterministic random streams.
///
/// Every consumer derives an independent substream from (seed, index), so
/// results never depend on thread count or evaluation order. The generator
/// is SplitMix64; Gaussians come from an explicit Box-Muller transform
/// instead of std::normal_distribution, whose output is
/// implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_double_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Substream for element `index` of the stream identified by `seed`.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  // Decorrelate seed and index through one extra mixing round each.
  SplitMix64 mixer(seed);
  std::uint64_t s = mixer.next_u64();
  return SplitMix64(s + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Standard normal variates via Box-Muller, one substream per consumer.
class GaussianStream {
 public:
  explicit GaussianStream(SplitMix64 gen) : gen_(gen) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = gen_.next_double_open0();
    const double u2 = gen_.next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double uniform() { return gen_.next_double(); }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace capdisc
