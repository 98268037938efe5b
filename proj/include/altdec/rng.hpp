#pragma once

// SplitMix64 with Box-Muller normals. The stream is fully specified here so
// other languages can reproduce it:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
// uniform() = (next() >> 11) * 2^-53; normals come in pairs from
//   r = sqrt(-2 ln(1 - u1)), (r cos(2 pi u2), r sin(2 pi u2)).

#include <cstdint>

#include "altdec/numerics.hpp"

namespace altdec {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for a cell addressed by (a, b).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

  std::uint64_t next();
  double uniform();
  /// Standard complex normal pair (re, im each N(0, 1)).
  Complex normal_pair();

 private:
  std::uint64_t state_;
};

/// Uniform on the complex sphere of radius `norm` in C^k.
ComplexVector signal_draw(SplitMix64& rng, int k, double norm);

}  // namespace altdec
