#include <doctest.h>

#include <cmath>
#include <numbers>

#include "altdec/errors.hpp"
#include "altdec/reconstruction.hpp"
#include "helpers.hpp"

using namespace altdec;

namespace {

constexpr double kPi = std::numbers::pi;

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

TEST_SUITE("reconstruction") {
  TEST_CASE("scaling entries") {
    CHECK(scaling_entry(0, 8, 2) == Complex(1.0));
    CHECK(scaling_entry(16, 8, 3) == Complex(1.0));
    const Complex e = scaling_entry(1, 4, 2);
    CHECK(std::abs(e - std::polar(1.0, kPi / 4) / std::sqrt(2.0)) <= 1e-15);
    // Theorem regime |n| <= m / (2 rho) keeps every modulus above 2 / pi.
    for (int rho : {2, 3, 5})
      for (int eta : {4, 7, 10})
        for (int n = -eta / 2; n <= eta / 2; ++n) CHECK(std::abs(scaling_entry(n, rho * eta, rho)) >= 2.0 / kPi);
  }

  TEST_CASE("scaling matrix and inverse norm") {
    const auto plan = make_plan(24, 3);
    const auto c = scaling_matrix(HarmonicFrameSpec{24, 3, {-1, 0, 4}}, plan);
    REQUIRE(c.diag.size() == 3);
    CHECK(c.diag[1] == Complex(1.0));
    CHECK(inverse_norm(c) <= kPi / 2);
    CHECK(h_function(0.0, 3) == 1.0);
  }

  TEST_CASE("commutation with the correction term") {
    const auto fr = harmonic_frame({12, 3, {-1, 0, 1}});
    CHECK(verify_commutation(fr, make_plan(12, 3)) <= 1e-12);
    const auto u = ugf_frame({20, 2, {-2, 1}, {0.6, 0.8}});
    CHECK(verify_commutation(u, make_plan(20, 4)) <= 1e-12);
    CHECK(verify_commutation(u, make_plan(20, 4, 2)) <= 1e-12);
    CHECK(code_of([&] { verify_commutation(ugf_frame({20, 2, {0, 1}, {0.6, 0.8}}), make_plan(20, 4, 2)); }) ==
          ErrorCode::hypothesis_violated);
  }

  TEST_CASE("plain and decimated duals invert the frame") {
    const auto fr = harmonic_frame({24, 4, {-1, 0, 1, 2}});
    const auto plain = build_dual(fr, {DualKind::plain, {}, 0.0, {}});
    CHECK(max_abs_diff(plain.factor * fr.E, ComplexMatrix::identity(4)) <= 1e-9);
    const auto dec = build_dual(fr, {DualKind::decimated, make_plan(24, 4), 0.0, {}});
    CHECK(max_abs_diff(dec.composed() * fr.E, ComplexMatrix::identity(4)) <= 1e-9);
    const ComplexVector x{0.1, -0.2, Complex(0.3, 0.1), 0.05};
    const auto y = fr.E * x;
    const auto xr = reconstruct(dec, dec.samples(y));
    CHECK(norm2(subtract(x, xr)) <= 1e-9);
    const auto zero = reconstruct(dec, ComplexVector(6));
    CHECK(norm2(zero) == 0.0);
  }

  TEST_CASE("beta duals") {
    const auto fr = harmonic_frame({16, 4, {-1, 0, 1, 2}});
    for (double beta : {1.0, 1.5, 2.0}) {
      const auto d = build_dual(fr, {DualKind::beta, {}, beta, {}});
      CHECK(max_abs_diff(d.composed() * fr.E, ComplexMatrix::identity(4)) <= 1e-9);
    }
    const auto v = beta_v(8, 2, 1.0);
    CHECK(v(0, 0).real() == doctest::Approx(0.25));
    CHECK_THROWS_AS(beta_v(9, 2, 2.0), Error);
    CHECK_THROWS_AS(beta_v(8, 2, 0.5), Error);
  }

  TEST_CASE("colliding residues are rank deficient") {
    const auto fr = harmonic_frame({12, 2, {1, 5}});  // 3*1 = 3*5 mod 12
    CHECK(code_of([&] { build_dual(fr, {DualKind::decimated, make_plan(12, 3), 0.0, {}}); }) == ErrorCode::rank_deficient);
  }

  TEST_CASE("closed-form bounds") {
    const double u = 0.25;
    {
      const auto fr = harmonic_frame({24, 4, {-2, -1, 1, 2}});
      const auto b = error_bound(fr, make_plan(24, 4), u);
      CHECK(b.regime == "harmonic_even");
      CHECK(b.bound_value == doctest::Approx(kPi * kPi * 5 / std::sqrt(3.0) * u * 4 / 24));
    }
    {
      const auto fr = harmonic_frame({24, 3, {-1, 0, 1}});
      const auto b = error_bound(fr, make_plan(24, 4), u);
      CHECK(b.regime == "harmonic_general");
      CHECK(b.bound_value == doctest::Approx(kPi / 2 * (2 * kPi * 4 / std::sqrt(3.0) + 1) * u * 3 / 24));
    }
    {
      const auto fr = harmonic_frame({26, 3, {-1, 0, 1}});
      const auto b = error_bound(fr, make_plan(26, 4), u);
      CHECK(b.regime == "harmonic_subsampled");
      CHECK(b.bound_value > 0.0);
    }
    const ComplexVector c{0.6, 0.8};
    {
      const auto fr = ugf_frame({40, 2, {-2, 3}, c});
      const auto b = error_bound(fr, make_plan(40, 5), u);
      CHECK(b.regime == "ugf_first_order");
      CHECK(b.bound_value == doctest::Approx(kPi / (2 * 8 * 0.36) * (2 * kPi * 3 + 1) * u / 5));
      const auto b2 = error_bound(fr, make_plan(40, 5, 2), u);
      CHECK(b2.regime == "ugf_second_order");
      const double ratio = 2 * kPi * 3 / 8;
      CHECK(b2.bound_value == doctest::Approx(kPi * kPi / (4 * 8 * 0.36) * (9 + 8 * ratio * ratio) * u / 25));
    }
    CHECK(code_of([&] { error_bound(ugf_frame({40, 2, {0, 3}, c}), make_plan(40, 5, 2), u); }) ==
          ErrorCode::hypothesis_violated);
    CHECK(code_of([&] { error_bound(ugf_frame({40, 2, {-2, 3}, c}), make_plan(40, 5, 3), u); }) ==
          ErrorCode::hypothesis_violated);
    CHECK(code_of([&] {
            error_bound(ugf_frame({40, 2, {-2, 3}, c}), make_plan(40, 5, 1, Variant::canonical), u);
          }) == ErrorCode::hypothesis_violated);
  }

  TEST_CASE("bit budget") {
    const Alphabet a{100, 0.5, true};
    CHECK(bit_budget(make_plan(130, 2), a, true) == 1170);
    CHECK(bit_budget(make_plan(130, 2), a, false) == 585);
    // r = 2 counts choices in a 2 L m range.
    CHECK(bit_budget(make_plan(130, 2, 2), a, true) == 2 * 65 * ceil_log2_pow(2 * 100 * 130, 2));
    CHECK(ceil_log2_pow(400, 1) == 9);
    CHECK(ceil_log2_pow(2, 10) == 10);
    CHECK(ceil_log2_pow(1, 5) == 0);
    CHECK(ceil_log2_pow(3, 2) == 4);
  }
}
