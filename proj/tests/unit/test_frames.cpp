#include <doctest.h>

#include <cmath>
#include <numbers>

#include "altdec/errors.hpp"
#include "altdec/frames.hpp"
#include "helpers.hpp"

using namespace altdec;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("harmonic frame with m = k is a scaled DFT") {
    const int k = 6;
    std::vector<long long> f;
    for (int i = 0; i < k; ++i) f.push_back(i);
    const auto fr = harmonic_frame({k, k, f});
    CHECK(max_abs_diff(fr.E.adjoint() * fr.E, ComplexMatrix::identity(k)) <= 1e-10);
  }

  TEST_CASE("harmonic frame entry") {
    const auto fr = harmonic_frame({4, 2, {0, 1}});
    CHECK(std::abs(fr.E(0, 1) - Complex(0.0, -1.0 / std::sqrt(2.0))) <= 1e-15);
  }

  TEST_CASE("duplicate frequencies are rejected") {
    CHECK(code_of([] { harmonic_frame({4, 2, {1, 1}}); }) == ErrorCode::duplicate_frequencies);
  }

  TEST_CASE("experiment frame equals harmonic frequencies 1..k") {
    const auto b = appendix_b_frame(130, 55);
    std::vector<long long> f;
    for (int j = 1; j <= 55; ++j) f.push_back(j);
    CHECK(max_abs_diff(b.E, harmonic_frame({130, 55, f}).E) <= 1e-13);
    CHECK(std::get<HarmonicFrameSpec>(b.spec).freqs == f);
  }

  TEST_CASE("experiment frame against frequencies 2..k+1 after re-phasing") {
    // Column j of frequencies 2..k+1 at row l equals column j of 1..k at row l
    // times exp(-2 pi i l / m); compare up to that per-row phase.
    const int m = 20, k = 5;
    const auto b = appendix_b_frame(m, k);
    std::vector<long long> f;
    for (int j = 2; j <= k + 1; ++j) f.push_back(j);
    const auto h = harmonic_frame({m, k, f});
    for (int l = 1; l <= m; ++l) {
      const Complex phase = std::polar(1.0, -2.0 * std::numbers::pi * l / m);
      for (int j = 0; j < k; ++j) CHECK(std::abs(h.E(l - 1, j) - phase * b.E(l - 1, j)) <= 1e-13);
    }
  }

  TEST_CASE("experiment frame with m = k = 1") {
    const auto b = appendix_b_frame(1, 1);
    CHECK(std::abs(b.E(0, 0) - 1.0) <= 1e-15);
  }

  TEST_CASE("UGF with flat coefficients is the harmonic frame") {
    const int m = 16, k = 4;
    std::vector<long long> f{-2, -1, 1, 2};
    const auto h = harmonic_frame({m, k, f});
    const auto u = ugf_frame({m, k, {-2, -1, 1, 2}, ComplexVector(k, 0.5)});
    CHECK(max_abs_diff(h.E, u.E) <= 1e-12);
  }

  TEST_CASE("UGF single vector with zero eigenvalue is the ones column") {
    const auto u = ugf_frame({5, 1, {0.0}, {1.0}});
    for (int l = 0; l < 5; ++l) CHECK(std::abs(u.E(l, 0) - 1.0) <= 1e-15);
  }

  TEST_CASE("UGF frame operator is diagonal for distinct eigenvalues") {
    const int m = 12, k = 3;
    const ComplexVector c{{0.6, 0.0}, {0.0, 0.48}, {0.64, 0.0}};
    const auto u = ugf_frame({m, k, {-3, 1, 4}, c});
    const auto eig = hermitian_eig(u.E.adjoint() * u.E);
    std::vector<double> expect;
    for (auto z : c) expect.push_back(m * std::norm(z));
    std::sort(expect.begin(), expect.end());
    for (int s = 0; s < k; ++s) CHECK(eig.eigenvalues[s] == doctest::Approx(expect[s]).epsilon(1e-10));
  }

  TEST_CASE("UGF rejects a non-unit base vector") {
    CHECK(code_of([] { ugf_frame({5, 2, {0, 1}, {1.0, 1.0}}); }) == ErrorCode::non_unit_base_vector);
  }

  TEST_CASE("generator with diagonal integers gives the exponential frame") {
    ComplexMatrix omega{{2.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 5.0}};
    const ComplexVector phi0(3, 1.0 / std::sqrt(3.0));
    const auto spec = ugf_from_generator(omega, phi0, 9);
    CHECK(spec.eigenvalues == std::vector<double>{-1.0, 2.0, 5.0});
    for (auto c : spec.base_coeffs) CHECK(std::norm(c) == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("generator zero and swap") {
    const auto zero = ugf_from_generator(ComplexMatrix(2, 2), ComplexVector{0.6, 0.8}, 4);
    double energy = 0;
    for (auto c : zero.base_coeffs) energy += std::norm(c);
    CHECK(energy == doctest::Approx(1.0));
    for (double l : zero.eigenvalues) CHECK(l == doctest::Approx(0.0));

    const auto sw = ugf_from_generator(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, ComplexVector{1.0, 0.0}, 4);
    CHECK(sw.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sw.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(std::norm(sw.base_coeffs[0]) == doctest::Approx(0.5));
    CHECK(std::norm(sw.base_coeffs[1]) == doctest::Approx(0.5));
  }

  TEST_CASE("frame variation") {
    CHECK(frame_variation(ComplexMatrix{{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}}) == 0.0);
    CHECK(frame_variation(ComplexMatrix{{1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}}) == doctest::Approx(2.0 * std::sqrt(2.0)));
    for (int k : {2, 4, 6}) {
      std::vector<long long> f;
      for (int n = -k / 2 + 1; n <= k / 2; ++n) f.push_back(n);
      const auto fr = harmonic_frame({8 * k, k, f});
      CHECK(frame_variation(fr.E.adjoint()) <= 2.0 * std::numbers::pi * (k + 1) / std::sqrt(3.0));
    }
  }

  TEST_CASE("frame bounds") {
    const int m = 24, k = 4, rho = 3;
    const auto tight = harmonic_frame({m, k, {-1, 0, 1, 2}});
    const auto b = frame_bounds(tight);
    CHECK(b.lower == doctest::Approx(double(m) / k));
    CHECK(b.upper == doctest::Approx(double(m) / k));

    const ComplexVector c{{0.6, 0.0}, {0.0, 0.48}, {0.64, 0.0}};
    const auto u = ugf_frame({m, 3, {-3, 1, 4}, c});
    const auto sub = frame_bounds(u.E.strided_rows(rho - 1, rho, m / rho));
    CHECK(sub.lower == doctest::Approx((m / rho) * std::norm(c[1])).epsilon(1e-10));
    CHECK(sub.upper == doctest::Approx((m / rho) * std::norm(c[2])).epsilon(1e-10));

    ComplexMatrix dup{{1.0, 1.0}, {1.0, 1.0}, {2.0, 2.0}};
    CHECK(frame_bounds(dup).lower <= 1e-10);
  }

  TEST_CASE("zero-sum test") {
    CHECK(zero_sum_check(harmonic_frame({10, 3, {1, 2, -3}})));
    CHECK_FALSE(zero_sum_check(harmonic_frame({10, 3, {0, 2, -3}})));
    CHECK_FALSE(zero_sum_check(harmonic_frame({1, 1, {0}})));
  }

  TEST_CASE("regime predicates") {
    CHECK(harmonic_regime({16, 4, {-2, -1, 1, 2}}));
    CHECK_FALSE(harmonic_regime({16, 4, {-2, -1, 1, 3}}));
    CHECK(ugf_regime({16, 2, {-2, 3}, {0.6, 0.8}}, 6));
    CHECK_FALSE(ugf_regime({16, 2, {-2, 4}, {0.6, 0.8}}, 6));
    CHECK_FALSE(ugf_regime({16, 2, {-2, 0.5}, {0.6, 0.8}}, 6));
  }
}
