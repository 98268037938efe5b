#include <doctest.h>

#include <cmath>
#include <sstream>

#include "altdec/errors.hpp"
#include "altdec/experiment.hpp"
#include "altdec/rng.hpp"

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

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.k = 4;
  cfg.eta = 6;
  cfg.rho_list = {2, 4, 8};
  cfg.r_list = {1, 2};
  cfg.trials = 3;
  return cfg;
}

std::vector<ErrorRecord> synthetic(double power) {
  std::vector<ErrorRecord> recs;
  for (int rho : {2, 4, 8, 16}) {
    ErrorRecord r;
    r.rho = rho;
    r.max_err = 3.0 / std::pow(rho, power);
    recs.push_back(r);
  }
  return recs;
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("signals lie on the sphere and repeat per stream") {
    auto a = SplitMix64::substream(7, 2, 3);
    auto b = SplitMix64::substream(7, 2, 3);
    const auto x = signal_draw(a, 8, 1.5);
    CHECK(std::abs(norm2(x) - 1.5) <= 1e-12);
    CHECK(x == signal_draw(b, 8, 1.5));
    auto c = SplitMix64::substream(7, 2, 4);
    CHECK(x != signal_draw(c, 8, 1.5));
    CHECK_THROWS_AS(signal_draw(a, 8, 0.0), Error);
  }

  TEST_CASE("reference SplitMix64 outputs") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFULL);
    CHECK(g.next() == 0x6E789E6AA1B965F4ULL);
  }

  TEST_CASE("empirical mean is near zero") {
    SplitMix64 g(123);
    const int n = 10000;
    Complex sum{};
    for (int i = 0; i < n; ++i) sum += signal_draw(g, 1, 1.0)[0];
    // Each component of a unit-modulus draw has variance 1/2.
    const double sigma = std::sqrt(0.5 / n);
    CHECK(std::abs(sum.real() / n) <= 3 * sigma);
    CHECK(std::abs(sum.imag() / n) <= 3 * sigma);
  }
}

TEST_SUITE("experiment") {
  TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"({"k": 4, "eta": 6, "rho_list": [2, 4], "schemes": ["plain"], "seed": 9})");
    CHECK(cfg.k == 4);
    CHECK(cfg.rho_list == std::vector<int>{2, 4});
    CHECK(cfg.schemes == std::vector<Scheme>{Scheme::plain});
    CHECK(cfg.seed == 9);
    const auto again = parse_config(config_to_json(cfg));
    CHECK(config_to_json(again) == config_to_json(cfg));
  }

  TEST_CASE("config errors") {
    for (const char* bad : {R"({"kk": 1})", R"({"k": "four"})", R"({"k": 0})", R"({"schemes": []})",
                            R"({"schemes": ["fancy"]})", R"({"delta": -1})", R"([1, 2])", "{", R"({"seed": -4})",
                            R"({"frame_kind": "ugf"})", R"({"k": 30, "eta": 2, "rho_list": [2]})",
                            R"({"frame_params": {"nope": 1}})"}) {
      CAPTURE(bad);
      CHECK(code_of([&] { parse_config(bad); }) == ErrorCode::config_error);
    }
  }

  TEST_CASE("presets") {
    const auto desk = preset("desk");
    CHECK(desk.k == 8);
    CHECK(desk.eta == 12);
    CHECK(desk.rho_list == std::vector<int>{2, 4, 8, 16, 32});
    const auto full = preset("appendix-b");
    CHECK(full.k == 55);
    CHECK(full.eta == 65);
    CHECK(full.L == 100);
    CHECK(full.delta == 0.5);
    CHECK(full.trials == 10);
    CHECK(full.r_list == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(code_of([] { preset("huge"); }) == ErrorCode::config_error);
  }

  TEST_CASE("zero trials give no records") {
    auto cfg = small_config();
    cfg.trials = 0;
    CHECK(run_experiment(cfg).empty());
  }

  TEST_CASE("runs are deterministic and schedule independent") {
    const auto cfg = small_config();
    std::ostringstream a, b;
    write_records_csv(a, run_experiment(cfg, {1, true}));
    write_records_csv(b, run_experiment(cfg, {4, true}));
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    const auto back = read_records_csv(in);
    std::ostringstream c;
    write_records_csv(c, back);
    CHECK(c.str() == a.str());
  }

  TEST_CASE("record contents") {
    auto cfg = small_config();
    cfg.frame_kind = FrameKind::harmonic;
    cfg.frame_params.freqs = {-2, -1, 1, 2};
    const auto recs = run_experiment(cfg, {1, true});
    CHECK(recs.size() == 2 * 3 * 3);
    for (const auto& r : recs) {
      CHECK(r.status == "ok");
      CHECK(r.m == r.rho * 6);
      CHECK(r.trial_count == 3);
      CHECK(r.max_err >= r.mean_err);
      CHECK(r.wall_ms == 0.0);
      if (r.scheme == Scheme::alternative) {
        REQUIRE(r.bound_value.has_value());
        CHECK(r.max_err <= *r.bound_value);
      } else {
        CHECK_FALSE(r.bound_value.has_value());
      }
    }
  }

  TEST_CASE("failed cells are tagged") {
    ExperimentConfig cfg;
    cfg.k = 4;
    cfg.eta = 2;  // D S E has rank at most 2 < k
    cfg.rho_list = {4};
    cfg.r_list = {1};
    cfg.schemes = {Scheme::alternative, Scheme::plain};
    cfg.trials = 2;
    const auto recs = run_experiment(cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].status == "rank_deficient");
    CHECK(recs[1].status == "ok");
  }

  TEST_CASE("slopes of exact power laws") {
    const auto one = fit_slopes(synthetic(1.0));
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0].slope + 1.0) <= 1e-9);
    CHECK(std::abs(one[0].r_squared - 1.0) <= 1e-9);
    const auto two = fit_slopes(synthetic(2.0));
    CHECK(std::abs(two[0].slope + 2.0) <= 1e-9);
    auto few = synthetic(1.0);
    few.resize(2);
    CHECK(code_of([&] { fit_slopes(few); }) == ErrorCode::insufficient_points);
  }

  TEST_CASE("CSV header and float format") {
    std::ostringstream os;
    write_records_csv(os, {});
    CHECK(os.str() == std::string(kRecordHeader) + "\n");
    CHECK(format_double(0.1) == "0.10000000000000001");
    std::istringstream bad("scheme,r\n");
    CHECK(code_of([&] { read_records_csv(bad); }) == ErrorCode::config_error);
  }
}
