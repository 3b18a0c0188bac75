#pragma once

#include <cmath>
#include <cstdint>

namespace wn {

/// SplitMix64: tiny explicit generator used for reproducible random
/// draws in the verification suites. Platform RNGs are avoided on
/// purpose so reports are byte-identical everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Log-uniform integer in [lo, hi].
  std::int64_t log_uniform_int(std::int64_t lo, std::int64_t hi) {
    double v = log_uniform(static_cast<double>(lo), static_cast<double>(hi) + 0.999);
    auto k = static_cast<std::int64_t>(v);
    if (k < lo) k = lo;
    if (k > hi) k = hi;
    return k;
  }

 private:
  std::uint64_t state_;
};

}  // namespace wn
