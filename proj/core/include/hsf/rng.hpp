#pragma once

#include <cstdint>
#include <random>

namespace hsf {

/// Seedable generator whose output is identical on every conforming platform.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the C++ standard.
/// The distribution transforms are written out here instead of using
/// <random> distributions, which are implementation-defined:
///   uniform()   = (x >> 11) * 2^-53, a double in [0, 1)
///   normal()    = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)   (Box-Muller, one draw per pair)
///   bernoulli() = uniform() < p
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream derived from (seed, stream_index) through SplitMix64.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace hsf
