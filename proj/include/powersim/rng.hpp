#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace powersim {

/// 64-bit Mersenne Twister with portable variate generation. The standard
/// distributions are implementation-defined, so uniform/exponential/normal
/// draws are computed here to keep sequences identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  double exponential() { return -std::log1p(-uniform()); }
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the independent substream `index` of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace powersim
