#include "altdec/identities.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

std::atomic<int> g_corruption{0};

// Dense integer matrix; indices in the accessors are 1-based to mirror the
// operator definitions.
class IntMatrix {
 public:
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& at(int i, int j) { return data_[static_cast<std::size_t>(i - 1) * cols_ + (j - 1)]; }
  std::int64_t at(int i, int j) const { return data_[static_cast<std::size_t>(i - 1) * cols_ + (j - 1)]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::dimension_mismatch, "integer product shapes");
    IntMatrix out(a.rows_, b.cols_);
    for (int i = 1; i <= a.rows_; ++i)
      for (int l = 1; l <= a.cols_; ++l) {
        const auto x = a.at(i, l);
        if (x == 0) continue;
        for (int j = 1; j <= b.cols_; ++j) out.at(i, j) += x * b.at(l, j);
      }
    return out;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  IntMatrix scaled(std::int64_t s) const {
    IntMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  ComplexMatrix to_complex() const {
    ComplexMatrix out(rows_, cols_);
    for (int i = 1; i <= rows_; ++i)
      for (int j = 1; j <= cols_; ++j) out(i - 1, j - 1) = static_cast<double>(at(i, j));
    return out;
  }

  friend std::int64_t max_abs_diff(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::dimension_mismatch, "integer compare shapes");
    std::int64_t worst = 0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) worst = std::max<std::int64_t>(worst, std::llabs(a.data_[i] - b.data_[i]));
    return worst;
  }

 private:
  int rows_;
  int cols_;
  std::vector<std::int64_t> data_;
};

int cyc(int j, int m) { return ((j - 1) % m + m) % m + 1; }

IntMatrix power(const IntMatrix& a, int e) {
  IntMatrix out(a.rows(), a.cols());
  for (int i = 1; i <= a.rows(); ++i) out.at(i, i) = 1;
  for (int t = 0; t < e; ++t) out = out * a;
  return out;
}

// rho * S_rho
IntMatrix scaled_s(int m, int rho) {
  IntMatrix s(m, m);
  for (int l = 1; l <= m; ++l) {
    if (l >= rho) {
      for (int j = l - rho + 1; j <= l; ++j) s.at(l, j) += 1;
    } else {
      for (int j = l + 1; j <= m - rho + l; ++j) s.at(l, cyc(j, m)) -= 1;
    }
  }
  if (g_corruption.load() > 0) s.at(1, 1) += 1;
  return s;
}

// rho * S~_rho
IntMatrix scaled_s_tilde(int m, int rho) {
  IntMatrix s(m, m);
  for (int l = 1; l <= m; ++l)
    for (int j = l - rho + 1; j <= l; ++j) s.at(l, cyc(j, m)) += 1;
  return s;
}

IntMatrix subsample(int m, int rho) {
  IntMatrix d(m / rho, m);
  for (int l = 1; l <= m / rho; ++l) d.at(l, rho * l) = 1;
  return d;
}

IntMatrix difference(int m) {
  IntMatrix d(m, m);
  for (int l = 1; l <= m; ++l) {
    d.at(l, l) = 1;
    if (l > 1) d.at(l, l - 1) = -1;
  }
  return d;
}

IntMatrix difference_inverse(int m) {
  IntMatrix d(m, m);
  for (int l = 1; l <= m; ++l)
    for (int j = 1; j <= l; ++j) d.at(l, j) = 1;
  return d;
}

IntMatrix difference_bar(int m, int rho) {
  IntMatrix d(m, m);
  for (int l = 1; l <= m; ++l) {
    d.at(l, l) += 1;
    const int j = cyc(l - rho, m);
    if (j != m) d.at(l, j) -= 1;
  }
  return d;
}

// All-ones column at m - rho.
IntMatrix ones_column(int m, int rho) {
  IntMatrix e(m, m);
  for (int l = 1; l <= m; ++l) e.at(l, m - rho) = 1;
  return e;
}

// Exact Delta^{-1} Delta_bar Delta - Delta_bar.
IntMatrix exact_commutator(int m, int rho) {
  IntMatrix e = ones_column(m, rho);
  for (int l = rho; l <= m; ++l) e.at(l, m - 1) -= 1;
  return e;
}

void require_divides(const DecimationPlan& plan) {
  if (plan.m % plan.rho != 0) {
    throw Error(ErrorCode::hypothesis_violated,
                "rho = " + std::to_string(plan.rho) + " does not divide m = " + std::to_string(plan.m));
  }
}

double as_double(std::int64_t x) { return static_cast<double>(x); }

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

}  // namespace

ScopedOperatorCorruption::ScopedOperatorCorruption() { ++g_corruption; }
ScopedOperatorCorruption::~ScopedOperatorCorruption() { --g_corruption; }

double verify_scaling_identity(const DecimationPlan& plan) {
  require_divides(plan);
  const int m = plan.m, rho = plan.rho;
  const IntMatrix lhs = subsample(m, rho) * scaled_s(m, rho) * difference(m);
  const IntMatrix rhs = difference(m / rho) * subsample(m, rho);
  return as_double(max_abs_diff(lhs, rhs)) / rho;
}

double verify_delta_bar_factorization(const DecimationPlan& plan) {
  const int m = plan.m, rho = plan.rho;
  const IntMatrix rhs = difference_bar(m, rho) * difference_inverse(m);
  return as_double(max_abs_diff(scaled_s(m, rho), rhs)) / rho;
}

double verify_canonical_equality(const DecimationPlan& plan) {
  const int m = plan.m, rho = plan.rho;
  const IntMatrix d = subsample(m, rho);
  return as_double(max_abs_diff(d * scaled_s_tilde(m, rho), d * scaled_s(m, rho))) / rho;
}

double verify_multiplicative(const DecimationPlan& plan, int rho1, int rho2) {
  const int m = plan.m;
  if (rho1 < 1 || rho2 < 1 || m % (rho1 * rho2) != 0) {
    throw Error(ErrorCode::hypothesis_violated, "rho1 rho2 must divide m");
  }
  const int mid = m / rho1;
  const IntMatrix first = subsample(m, rho1) * scaled_s(m, rho1);
  const IntMatrix second = subsample(mid, rho2) * scaled_s(mid, rho2);
  const IntMatrix whole = subsample(m, rho1 * rho2) * scaled_s(m, rho1 * rho2);
  return as_double(max_abs_diff(second * first, whole)) / (rho1 * rho2);
}

double verify_high_order_commutation(const DecimationPlan& plan) {
  require_divides(plan);
  const int m = plan.m, rho = plan.rho;
  const IntMatrix lhs = subsample(m, rho) * power(difference_bar(m, rho), plan.r);
  const IntMatrix rhs = power(difference(m / rho), plan.r) * subsample(m, rho);
  return as_double(max_abs_diff(lhs, rhs));
}

NonCommutationReport verify_non_commutation(const DecimationPlan& plan) {
  const int m = plan.m, rho = plan.rho;
  if (rho >= m) throw Error(ErrorCode::hypothesis_violated, "needs rho < m");
  const IntMatrix bar = difference_bar(m, rho);
  const IntMatrix diff = difference_inverse(m) * bar * difference(m) - bar;
  return {diff.to_complex(), as_double(max_abs_diff(diff, ones_column(m, rho))),
          as_double(max_abs_diff(diff, exact_commutator(m, rho)))};
}

SecondOrderDefect verify_second_order_defect(const DecimationPlan& plan) {
  require_divides(plan);
  const int m = plan.m, rho = plan.rho, eta = m / rho;
  const IntMatrix d = subsample(m, rho);
  const IntMatrix defect = d * power(scaled_s(m, rho), 2) * power(difference(m), 2) - power(difference(eta), 2) * d;

  SecondOrderDefect out{defect.to_complex(), {}, 0.0, 0.0};
  for (int s = 1; s <= m; ++s) {
    for (int l = 1; l <= eta; ++l) {
      if (defect.at(l, s) != 0) {
        out.nonzero_columns.push_back(s);
        break;
      }
    }
  }
  IntMatrix stated(eta, m);
  if (rho < m) stated.at(1, m - rho) = 1;
  IntMatrix corrected(eta, m);
  if (rho < m) corrected.at(1, m - rho) += 1;
  if (m >= 2) corrected.at(1, m - 1) -= 1;
  out.stated_deviation = as_double(max_abs_diff(defect, stated));
  out.corrected_deviation = as_double(max_abs_diff(defect, corrected));
  return out;
}

ThirdOrderReport verify_third_order_terms(const DecimationPlan& plan) {
  require_divides(plan);
  const int m = plan.m, rho = plan.rho, eta = m / rho;
  if (2 * rho >= m) throw Error(ErrorCode::hypothesis_violated, "needs 2 rho < m");

  const IntMatrix d = subsample(m, rho);
  const IntMatrix bar = difference_bar(m, rho);
  const IntMatrix dif = difference(m);
  const IntMatrix inv = difference_inverse(m);
  const IntMatrix e = ones_column(m, rho);
  const IntMatrix t = inv * e * dif;
  const IntMatrix bar2 = bar * bar;

  ThirdOrderReport rep;
  const std::array<IntMatrix, 5> items{d * bar2 * e, d * bar2 * t, d * bar * e * bar, d * bar * e * e, d * bar * e * t};

  std::array<IntMatrix, 5> closed{IntMatrix(eta, m), IntMatrix(eta, m), IntMatrix(eta, m), IntMatrix(eta, m),
                                  IntMatrix(eta, m)};
  closed[0].at(1, m - rho) += 1;
  closed[0].at(2, m - rho) -= 1;
  closed[1].at(1, m - rho - 1) -= rho;
  closed[1].at(1, m - rho) += rho;
  closed[2].at(1, m - rho) += 1;
  closed[2].at(1, m - 2 * rho) -= 1;
  closed[3].at(1, m - rho) += 1;
  closed[4].at(1, m - rho) += m - rho;
  closed[4].at(1, m - rho - 1) -= m - rho;
  for (int i = 0; i < 5; ++i) rep.item_deviation[i] = as_double(max_abs_diff(items[i], closed[i]));

  IntMatrix e1(eta, m);  // stated E1, scaled by m below
  e1.at(1, m - rho - 1) = -1;
  e1.at(1, m - rho) = 1;
  IntMatrix e2(eta, m);
  e2.at(2, m - rho) -= 1;
  e2.at(1, m - 2 * rho) -= 1;
  e2.at(1, m - rho) += 3;
  rep.e1_deviation = as_double(max_abs_diff(items[1] + items[4], e1.scaled(m))) / m;
  rep.e2_deviation = as_double(max_abs_diff(items[0] + items[2] + items[3], e2));

  const IntMatrix bar3 = bar2 * bar;
  const IntMatrix lhs = d * power(scaled_s(m, rho), 3) * power(dif, 3);
  rep.stated_decomposition_deviation = as_double(max_abs_diff(lhs, d * bar3 + e1.scaled(m) + e2));

  const IntMatrix ec = exact_commutator(m, rho);
  const IntMatrix tc = inv * ec * dif;
  const IntMatrix expansion = d * (bar3 + bar2 * ec + bar2 * tc + bar * ec * bar + bar * ec * ec + bar * ec * tc);
  rep.corrected_decomposition_deviation = as_double(max_abs_diff(lhs, expansion));
  rep.defect_max = as_double(max_abs_diff(lhs, power(difference(eta), 3) * d));
  return rep;
}

CanonicalDefectReport verify_canonical_second_order(const DecimationPlan& plan) {
  require_divides(plan);
  const int m = plan.m, rho = plan.rho, eta = m / rho;
  const IntMatrix d = subsample(m, rho);
  const IntMatrix s = scaled_s(m, rho);
  const IntMatrix st = scaled_s_tilde(m, rho);
  const IntMatrix l = st - s;  // rho L
  const IntMatrix defect = d * s * l * power(difference(m), 2);

  IntMatrix closed(eta, m);
  if (m >= 2) {
    closed.at(1, m - 1) -= rho - 1;
    closed.at(1, m) += rho - 1;
  }
  CanonicalDefectReport rep;
  const auto rho2 = ipow(rho, 2);
  rep.defect_deviation = as_double(max_abs_diff(defect, closed)) / as_double(rho2);
  rep.squares_gap = as_double(max_abs_diff(d * st * st, d * s * s)) / as_double(rho2);
  return rep;
}

}  // namespace altdec
