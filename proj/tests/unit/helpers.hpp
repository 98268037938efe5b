#pragma once

#include <cstdint>
#include <random>

#include "altdec/numerics.hpp"

namespace testing {

inline altdec::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  altdec::ComplexMatrix a(rows, cols);
  for (auto& z : a.entries()) z = {n(gen), n(gen)};
  return a;
}

inline altdec::ComplexVector random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  altdec::ComplexVector v(n);
  for (auto& z : v) z = {scale * d(gen), scale * d(gen)};
  return v;
}

// Dense oracle matrices built straight from the index formulas (1-based).
inline altdec::ComplexMatrix dense_difference(int m) {
  altdec::ComplexMatrix d(m, m);
  for (int i = 0; i < m; ++i) {
    d(i, i) = 1.0;
    if (i > 0) d(i, i - 1) = -1.0;
  }
  return d;
}

inline altdec::ComplexMatrix dense_s(int m, int rho) {
  altdec::ComplexMatrix s(m, m);
  for (int l = 1; l <= m; ++l) {
    if (l >= rho) {
      for (int c = l - rho + 1; c <= l; ++c) s(l - 1, c - 1) = 1.0 / rho;
    } else {
      for (int c = l + 1; c <= m - rho + l; ++c) s(l - 1, c - 1) = -1.0 / rho;
    }
  }
  return s;
}

inline altdec::ComplexMatrix dense_s_tilde(int m, int rho) {
  altdec::ComplexMatrix s(m, m);
  for (int l = 1; l <= m; ++l)
    for (int t = 0; t < rho; ++t) s(l - 1, ((l - 1 - t) % m + m) % m) += 1.0 / rho;
  return s;
}

inline altdec::ComplexMatrix dense_subsample(int m, int rho) {
  const int eta = m / rho;
  altdec::ComplexMatrix d(eta, m);
  for (int l = 1; l <= eta; ++l) d(l - 1, rho * l - 1) = 1.0;
  return d;
}

}  // namespace testing
