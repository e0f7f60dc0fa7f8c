#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace grn {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of stream `index` under master seed `master_seed`.
///
/// stream_seed(m, i) = splitmix64(splitmix64(m) ^ splitmix64(i + 0x9E3779B97F4A7C15)).
/// Every trajectory of an ensemble draws from its own stream, so results do
/// not depend on how trajectories are scheduled across workers.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Random source owned by exactly one trajectory. Variates are produced with
/// explicit transforms of the raw 64-bit engine output (no std:: distribution
/// objects) so streams are bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(stream_seed(master_seed, index));
  }

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential (rate 1); always > 0.
  double exponential() { return -std::log(uniform()); }

  double exponential(double rate) { return exponential() / rate; }

  /// Number of failures before the first success: P(k) = p (1 - p)^k, k >= 0.
  std::uint64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace grn
