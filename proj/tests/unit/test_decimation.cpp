#include <doctest.h>

#include "altdec/decimation.hpp"
#include "altdec/errors.hpp"
#include "helpers.hpp"

using namespace altdec;

TEST_SUITE("decimation") {
  TEST_CASE("first rows of the two averagers") {
    const auto plan = make_plan(4, 2);
    const auto st = StructuredOperator::build(OpKind::S_tilde_rho, plan).dense();
    const auto s = StructuredOperator::build(OpKind::S_rho, plan).dense();
    const ComplexVector st_row{0.5, 0.0, 0.0, 0.5};
    const ComplexVector s_row{0.0, -0.5, -0.5, 0.0};
    for (int c = 0; c < 4; ++c) {
      CHECK(st(0, c) == st_row[c]);
      CHECK(s(0, c) == s_row[c]);
    }
  }

  TEST_CASE("operators match dense oracles") {
    for (int m : {1, 4, 7, 12}) {
      for (int rho = 1; rho <= m; ++rho) {
        const auto plan = make_plan(m, rho);
        CHECK(max_abs_diff(StructuredOperator::build(OpKind::S_rho, plan).dense(), testing::dense_s(m, rho)) == 0.0);
        CHECK(max_abs_diff(StructuredOperator::build(OpKind::S_tilde_rho, plan).dense(), testing::dense_s_tilde(m, rho)) ==
              0.0);
        CHECK(max_abs_diff(StructuredOperator::build(OpKind::D_rho, plan).dense(), testing::dense_subsample(m, rho)) == 0.0);
        CHECK(max_abs_diff(StructuredOperator::build(OpKind::Delta, plan).dense(), testing::dense_difference(m)) == 0.0);
      }
    }
  }

  TEST_CASE("rho = 1 is the identity") {
    const auto plan = make_plan(6, 1);
    for (auto kind : {OpKind::S_rho, OpKind::S_tilde_rho, OpKind::D_rho})
      CHECK(max_abs_diff(StructuredOperator::build(kind, plan).dense(), ComplexMatrix::identity(6)) == 0.0);
  }

  TEST_CASE("subsampling picks multiples of rho") {
    const auto d = StructuredOperator::build(OpKind::D_rho, make_plan(6, 2)).dense();
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 6);
    for (int l = 1; l <= 3; ++l) CHECK(d(l - 1, 2 * l - 1) == 1.0);
    const auto out = StructuredOperator::build(OpKind::D_rho, make_plan(4, 2)).apply(ComplexVector{1.0, 2.0, 3.0, 4.0});
    CHECK(out == ComplexVector{2.0, 4.0});
  }

  TEST_CASE("circulant averaging by hand") {
    const auto out = StructuredOperator::build(OpKind::S_tilde_rho, make_plan(4, 2)).apply(ComplexVector{1.0, 2.0, 3.0, 4.0});
    CHECK(out == ComplexVector{2.5, 1.5, 2.5, 3.5});
  }

  TEST_CASE("averaging preserves constants from row rho on") {
    const auto out = StructuredOperator::build(OpKind::S_rho, make_plan(10, 4)).apply(ComplexVector(10, 3.0));
    for (int l = 3; l < 10; ++l) CHECK(std::abs(out[l] - 3.0) <= 1e-15);
  }

  TEST_CASE("composition applies right to left") {
    const auto plan = make_plan(8, 2);
    const auto comp = StructuredOperator::compose({StructuredOperator::build(OpKind::D_rho, plan),
                                                   StructuredOperator::build(OpKind::S_rho, plan),
                                                   StructuredOperator::build(OpKind::Delta, plan)});
    CHECK(comp.rows() == 4);
    CHECK(comp.cols() == 8);
    const auto dense = testing::dense_subsample(8, 2) * testing::dense_s(8, 2) * testing::dense_difference(8);
    CHECK(max_abs_diff(comp.dense(), dense) <= 1e-15);
  }

  TEST_CASE("decimate examples") {
    CHECK(decimate(ComplexVector(4, 1.0), make_plan(4, 2, 1)) == ComplexVector{1.0, 1.0});
    const auto q = testing::random_vector(24, 3);
    for (int rho : {2, 3, 4, 6}) {
      const auto alt = decimate(q, make_plan(24, rho, 1, Variant::alternative));
      const auto can = decimate(q, make_plan(24, rho, 1, Variant::canonical));
      for (std::size_t i = 0; i < alt.size(); ++i) CHECK(std::abs(alt[i] - can[i]) <= 1e-14);
      const auto dense = testing::dense_subsample(24, rho) * testing::dense_s(24, rho) * q;
      for (std::size_t i = 0; i < alt.size(); ++i) CHECK(std::abs(alt[i] - dense[i]) <= 1e-13);
    }
  }

  TEST_CASE("second order variants differ near the start only") {
    const auto q = testing::random_vector(4, 8);
    const auto alt = decimate(q, make_plan(4, 2, 2, Variant::alternative));
    const auto can = decimate(q, make_plan(4, 2, 2, Variant::canonical));
    CHECK(std::abs(alt[0] - can[0]) > 1e-3);
    const auto m = decimation_matrix(make_plan(4, 2, 2, Variant::alternative));
    const auto mc = decimation_matrix(make_plan(4, 2, 2, Variant::canonical));
    const auto s = testing::dense_s(4, 2), st = testing::dense_s_tilde(4, 2), d = testing::dense_subsample(4, 2);
    CHECK(max_abs_diff(m, d * s * s) <= 1e-15);
    CHECK(max_abs_diff(mc, d * st * st) <= 1e-15);
  }

  TEST_CASE("invalid plans") {
    CHECK_THROWS_AS(make_plan(4, 5), Error);
    CHECK_THROWS_AS(make_plan(4, 0), Error);
    CHECK_THROWS_AS(make_plan(4, 2, 0), Error);
    CHECK(make_plan(9, 2).eta == 4);
    CHECK_FALSE(make_plan(9, 2).divides());
  }
}
