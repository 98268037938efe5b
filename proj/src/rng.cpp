#include "altdec/rng.hpp"

#include <cmath>
#include <numbers>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return SplitMix64(mix(mix(seed ^ mix(a + 0x9E3779B97F4A7C15ULL)) ^ mix(b + 0x632BE59BD9B4E019ULL)));
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Complex SplitMix64::normal_pair() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

ComplexVector signal_draw(SplitMix64& rng, int k, double norm) {
  if (!(norm > 0.0)) throw Error(ErrorCode::invalid_argument, "signal norm must be positive");
  if (k < 1) throw Error(ErrorCode::invalid_argument, "signal dimension must be positive");
  ComplexVector x(k);
  double n = 0.0;
  do {
    for (auto& z : x) z = rng.normal_pair();
    n = norm2(x);
  } while (n == 0.0);
  for (auto& z : x) z *= norm / n;
  return x;
}

}  // namespace altdec
