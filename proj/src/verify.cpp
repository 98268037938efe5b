#include "altdec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <json.hpp>

#include "altdec/decimation.hpp"
#include "altdec/errors.hpp"
#include "altdec/frames.hpp"
#include "altdec/identities.hpp"
#include "altdec/reconstruction.hpp"

namespace altdec {

namespace {

constexpr double kExactTol = 1e-14;
constexpr double kNumericTol = 1e-10;

struct Accumulator {
  IdentityRow row;

  Accumulator(std::string name, double tol) {
    row.name = std::move(name);
    row.tolerance = tol;
  }
  void add(double deviation) {
    ++row.grid_size;
    row.max_deviation = std::max(row.max_deviation, deviation);
    if (!(deviation <= row.tolerance)) row.pass = false;
  }
};

template <class F>
void for_each_divisor_plan(int max_m, F f) {
  for (int m = 1; m <= max_m; ++m)
    for (int rho = 1; rho <= m; ++rho)
      if (m % rho == 0) f(m, rho);
}

std::vector<long long> centered(int k) {
  std::vector<long long> f;
  for (long long n = -(k - 1) / 2; static_cast<int>(f.size()) < k; ++n) f.push_back(n);
  return f;
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) { return r.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["max_m"] = max_m;
  j["pass"] = all_pass();
  j["identities"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e{{"name", r.name},
                     {"grid_size", r.grid_size},
                     {"max_deviation", r.max_deviation},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}};
    if (!r.note.empty()) e["note"] = r.note;
    j["identities"].push_back(std::move(e));
  }
  return j.dump(2);
}

VerifyReport verify_all(int max_m) {
  VerifyReport rep;
  rep.max_m = max_m;

  Accumulator scaling("scaling_identity", kExactTol);
  Accumulator factor("delta_bar_factorization", kExactTol);
  Accumulator canon("canonical_equality", kExactTol);
  Accumulator mult("multiplicativity", kExactTol);
  Accumulator high("high_order_commutation", kExactTol);
  Accumulator nc_stated("non_commutation_stated", kExactTol);
  Accumulator nc_fixed("non_commutation_corrected", kExactTol);
  Accumulator sod_stated("second_order_defect_stated", kExactTol);
  Accumulator sod_fixed("second_order_defect_corrected", kExactTol);
  std::vector<Accumulator> items;
  for (int i = 1; i <= 5; ++i) items.emplace_back("third_order_item_" + std::to_string(i), kExactTol);
  Accumulator e1("third_order_e1", kExactTol);
  Accumulator e2("third_order_e2", kExactTol);
  Accumulator dec_stated("third_order_decomposition_stated", kExactTol);
  Accumulator dec_fixed("third_order_decomposition_corrected", kExactTol);
  Accumulator canon2("canonical_second_order_defect", kExactTol);

  for_each_divisor_plan(max_m, [&](int m, int rho) {
    const DecimationPlan plan = make_plan(m, rho);
    scaling.add(verify_scaling_identity(plan));
    factor.add(verify_delta_bar_factorization(plan));
    canon.add(verify_canonical_equality(plan));
    for (int r = 1; r <= 3; ++r) high.add(verify_high_order_commutation(make_plan(m, rho, r)));
    for (int rho2 = 1; rho * rho2 <= m; ++rho2)
      if (m % (rho * rho2) == 0) mult.add(verify_multiplicative(plan, rho, rho2));
    if (rho < m) {
      const auto nc = verify_non_commutation(plan);
      nc_stated.add(nc.stated_deviation);
      nc_fixed.add(nc.corrected_deviation);
    }
    const auto sod = verify_second_order_defect(plan);
    sod_stated.add(sod.stated_deviation);
    sod_fixed.add(sod.corrected_deviation);
    if (2 * rho < m) {
      const auto t = verify_third_order_terms(plan);
      for (int i = 0; i < 5; ++i) items[i].add(t.item_deviation[i]);
      e1.add(t.e1_deviation);
      e2.add(t.e2_deviation);
      dec_stated.add(t.stated_decomposition_deviation);
      dec_fixed.add(t.corrected_decomposition_deviation);
    }
    canon2.add(verify_canonical_second_order(plan).defect_deviation);
  });

  // Frame-side checks, floating point.
  Accumulator comm_h("frame_commutation_harmonic", kNumericTol);
  Accumulator comm_u1("frame_commutation_ugf_first_order", kNumericTol);
  Accumulator comm_u2("frame_commutation_ugf_second_order", kNumericTol);
  Accumulator inv("scaling_inverse_norm", 1e-12);
  inv.row.note = "deviation is max(0, ||C^-1||_2 - pi/2)";
  Accumulator rank("decimated_rank_iff_distinct_residues", 0.0);
  rank.row.note = "deviation counts disagreements";

  for_each_divisor_plan(max_m, [&](int m, int rho) {
    const int eta = m / rho;
    const int k = std::min(3, m);
    const auto h = harmonic_frame({m, k, centered(k)});
    comm_h.add(verify_commutation(h, make_plan(m, rho)));

    std::vector<double> lam;
    for (long long n : centered(std::min(3, eta))) lam.push_back(static_cast<double>(n));
    const int ku = static_cast<int>(lam.size());
    ComplexVector c(ku);
    for (int s = 0; s < ku; ++s) c[s] = std::polar(1.0, 0.7 * (s + 1)) / std::sqrt(static_cast<double>(ku));
    comm_u1.add(verify_commutation(ugf_frame({m, ku, lam, c}), make_plan(m, rho)));

    std::vector<double> nz;
    for (long long n = 1; n < m && static_cast<int>(nz.size()) < 3; ++n) nz.push_back(static_cast<double>(n % 2 ? n : -n));
    if (!nz.empty()) {
      const int k2 = static_cast<int>(nz.size());
      const ComplexVector c2(k2, 1.0 / std::sqrt(static_cast<double>(k2)));
      comm_u2.add(verify_commutation(ugf_frame({m, k2, nz, c2}), make_plan(m, rho, 2)));
    }

    std::vector<double> in_regime;
    for (long long n = -eta / 2; n <= eta / 2; ++n) in_regime.push_back(static_cast<double>(n));
    const auto cbar = scaling_matrix(UgfSpec{m, static_cast<int>(in_regime.size()), in_regime,
                                             ComplexVector(in_regime.size(), 1.0)},
                                     make_plan(m, rho));
    inv.add(std::max(0.0, inverse_norm(cbar) - std::numbers::pi / 2));

    if (eta >= 2) {
      for (int n1 = 0; n1 < m; ++n1) {
        for (int n2 = n1 + 1; n2 < m; ++n2) {
          const auto e = harmonic_frame({m, 2, {n1, n2}}).E.strided_rows(rho - 1, rho, eta);
          const bool full = frame_bounds(e).lower > 1e-10;
          const bool distinct = (static_cast<long long>(rho) * n1) % m != (static_cast<long long>(rho) * n2) % m;
          rank.add(full == distinct ? 0.0 : 1.0);
        }
      }
    }
  });

  for (auto* a : {&scaling, &factor, &canon, &mult, &high, &nc_stated, &nc_fixed, &sod_stated, &sod_fixed})
    rep.rows.push_back(a->row);
  for (auto& a : items) rep.rows.push_back(a.row);
  for (auto* a : {&e1, &e2, &dec_stated, &dec_fixed, &canon2, &comm_h, &comm_u1, &comm_u2, &inv, &rank})
    rep.rows.push_back(a->row);
  return rep;
}

}  // namespace altdec
