#include "altdec/decimation.hpp"

#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

// P[0] = 0, P[l] = v_1 + ... + v_l.
ComplexVector prefix_sums(std::span<const Complex> v) {
  ComplexVector p(v.size() + 1, Complex{});
  for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
  return p;
}

ComplexVector apply_s(std::span<const Complex> v, int rho, bool circulant) {
  const int m = static_cast<int>(v.size());
  const auto p = prefix_sums(v);
  const double inv = 1.0 / rho;
  ComplexVector out(m);
  for (int l = 1; l <= m; ++l) {
    Complex window;
    if (l >= rho) {
      window = p[l] - p[l - rho];
    } else if (circulant) {
      window = p[l] + (p[m] - p[m - rho + l]);
    } else {
      window = -(p[m - rho + l] - p[l]);
    }
    out[l - 1] = window * inv;
  }
  return out;
}

}  // namespace

DecimationPlan make_plan(int m, int rho, int r, Variant variant) {
  if (m < 1) throw Error(ErrorCode::invalid_plan, "m must be >= 1");
  if (rho < 1 || rho > m) {
    throw Error(ErrorCode::invalid_plan, "rho = " + std::to_string(rho) + " outside [1, " + std::to_string(m) + "]");
  }
  if (r < 1) throw Error(ErrorCode::invalid_plan, "order must be >= 1");
  return {m, rho, r, variant, m / rho};
}

StructuredOperator StructuredOperator::build(OpKind kind, const DecimationPlan& plan) {
  if (kind == OpKind::composition) throw Error(ErrorCode::invalid_argument, "use compose() for products");
  make_plan(plan.m, plan.rho, plan.r, plan.variant);
  StructuredOperator op;
  op.kind_ = kind;
  op.plan_ = plan;
  op.plan_.eta = plan.m / plan.rho;
  return op;
}

StructuredOperator StructuredOperator::compose(std::vector<StructuredOperator> factors) {
  if (factors.empty()) throw Error(ErrorCode::invalid_argument, "empty composition");
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i].cols() != factors[i + 1].rows()) throw Error(ErrorCode::dimension_mismatch, "composition shapes");
  }
  StructuredOperator op;
  op.kind_ = OpKind::composition;
  op.plan_ = factors.back().plan();
  op.factors_ = std::move(factors);
  return op;
}

std::size_t StructuredOperator::rows() const noexcept {
  if (kind_ == OpKind::composition) return factors_.front().rows();
  return kind_ == OpKind::D_rho ? static_cast<std::size_t>(plan_.eta) : static_cast<std::size_t>(plan_.m);
}

std::size_t StructuredOperator::cols() const noexcept {
  if (kind_ == OpKind::composition) return factors_.back().cols();
  return static_cast<std::size_t>(plan_.m);
}

ComplexVector StructuredOperator::apply(std::span<const Complex> v) const {
  if (v.size() != cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "operator expects " + std::to_string(cols()) + " entries, got " + std::to_string(v.size()));
  }
  const int m = plan_.m;
  const int rho = plan_.rho;
  switch (kind_) {
    case OpKind::S_rho:
      return apply_s(v, rho, false);
    case OpKind::S_tilde_rho:
      return apply_s(v, rho, true);
    case OpKind::D_rho: {
      ComplexVector out(plan_.eta);
      for (int l = 1; l <= plan_.eta; ++l) out[l - 1] = v[rho * l - 1];
      return out;
    }
    case OpKind::Delta: {
      ComplexVector out(v.begin(), v.end());
      for (int l = m - 1; l >= 1; --l) out[l] -= v[l - 1];
      return out;
    }
    case OpKind::Delta_bar_rho: {
      ComplexVector out(v.begin(), v.end());
      for (int l = 1; l <= m; ++l) {
        const int j = (((l - rho) % m) + m) % m;  // 0 stands for index m
        if (j != 0) out[l - 1] -= v[j - 1];
      }
      return out;
    }
    case OpKind::composition: {
      ComplexVector cur(v.begin(), v.end());
      for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) cur = it->apply(cur);
      return cur;
    }
  }
  return {};
}

ComplexMatrix StructuredOperator::dense() const {
  if (kind_ == OpKind::composition) {
    ComplexMatrix out = factors_.front().dense();
    for (std::size_t i = 1; i < factors_.size(); ++i) out = out * factors_[i].dense();
    return out;
  }
  const int m = plan_.m;
  const int rho = plan_.rho;
  const double inv = 1.0 / rho;
  ComplexMatrix out(rows(), cols());
  auto wrap = [m](int j) { return ((j - 1) % m + m) % m; };  // 1-based, cyclic -> 0-based
  switch (kind_) {
    case OpKind::S_rho:
      for (int l = 1; l <= m; ++l) {
        if (l >= rho) {
          for (int j = l - rho + 1; j <= l; ++j) out(l - 1, j - 1) += inv;
        } else {
          for (int j = l + 1; j <= m - rho + l; ++j) out(l - 1, wrap(j)) -= inv;
        }
      }
      break;
    case OpKind::S_tilde_rho:
      for (int l = 1; l <= m; ++l)
        for (int j = l - rho + 1; j <= l; ++j) out(l - 1, wrap(j)) += inv;
      break;
    case OpKind::D_rho:
      for (int l = 1; l <= plan_.eta; ++l) out(l - 1, rho * l - 1) = 1.0;
      break;
    case OpKind::Delta:
      for (int l = 1; l <= m; ++l) {
        out(l - 1, l - 1) = 1.0;
        if (l > 1) out(l - 1, l - 2) = -1.0;
      }
      break;
    case OpKind::Delta_bar_rho:
      for (int l = 1; l <= m; ++l) {
        out(l - 1, l - 1) += 1.0;
        const int j = wrap(l - rho) + 1;
        if (j != m) out(l - 1, j - 1) -= 1.0;
      }
      break;
    case OpKind::composition:
      break;
  }
  return out;
}

ComplexVector decimate(std::span<const Complex> q, const DecimationPlan& plan) {
  if (q.size() != static_cast<std::size_t>(plan.m)) {
    throw Error(ErrorCode::dimension_mismatch,
                "decimate expects " + std::to_string(plan.m) + " samples, got " + std::to_string(q.size()));
  }
  const bool circulant = plan.variant == Variant::canonical;
  ComplexVector cur(q.begin(), q.end());
  for (int t = 0; t < plan.r; ++t) cur = apply_s(cur, plan.rho, circulant);
  ComplexVector out(plan.eta);
  for (int l = 1; l <= plan.eta; ++l) out[l - 1] = cur[plan.rho * l - 1];
  return out;
}

ComplexMatrix decimation_matrix(const DecimationPlan& plan) {
  // Column by column through the O(m) path; dense products would be O(m^3).
  ComplexMatrix out(plan.eta, plan.m);
  ComplexVector unit(plan.m, Complex{});
  for (int j = 0; j < plan.m; ++j) {
    unit[j] = 1.0;
    out.set_col(j, decimate(unit, plan));
    unit[j] = 0.0;
  }
  return out;
}

}  // namespace altdec
