#include "altdec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, ComplexVector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::dimension_mismatch, "entry count does not match shape");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, ComplexVector(v.begin(), v.end()));
}

ComplexVector ComplexMatrix::row(std::size_t i) const {
  return ComplexVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ComplexVector ComplexMatrix::col(std::size_t j) const {
  ComplexVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void ComplexMatrix::set_col(std::size_t j, std::span<const Complex> v) {
  if (v.size() != rows_) throw Error(ErrorCode::dimension_mismatch, "set_col length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix ComplexMatrix::row_block(std::size_t first, std::size_t count) const {
  return strided_rows(first, 1, count);
}

ComplexMatrix ComplexMatrix::strided_rows(std::size_t first, std::size_t step, std::size_t count) const {
  if (count > 0 && first + (count - 1) * step >= rows_) {
    throw Error(ErrorCode::dimension_mismatch, "row selection out of range");
  }
  ComplexMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((first + i * step) * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix product " + std::to_string(a.cols()) + " vs " +
                                                   std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      if (ail == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::dimension_mismatch, "matrix-vector product");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix power(const ComplexMatrix& a, int exponent) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "power of non-square matrix");
  if (exponent < 0) throw Error(ErrorCode::invalid_argument, "negative matrix power");
  ComplexMatrix out = ComplexMatrix::identity(a.rows());
  for (int i = 0; i < exponent; ++i) out = out * a;
  return out;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double norm2(std::span<const Complex> v) {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  for (const auto& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z / scale);
  return scale * std::sqrt(acc);
}

double norm_inf(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

ComplexVector subtract(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "vector subtract");
  ComplexVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double symmetry_tol) {
  const std::size_t n = h.rows();
  if (n != h.cols()) throw Error(ErrorCode::not_hermitian, "matrix is not square");
  if (!h.all_finite()) throw Error(ErrorCode::not_hermitian, "non-finite entry");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > symmetry_tol) {
        throw Error(ErrorCode::not_hermitian, "asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }

  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob = 0.0;
  for (const auto& z : a.entries()) frob += std::norm(z);
  frob = std::sqrt(frob);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = n <= 1 || frob == 0.0;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_norm() <= tol::kJacobi * frob) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double c_abs = std::abs(apq);
        if (c_abs == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase-normalize to a real symmetric 2x2, then rotate.
        const Complex phase = apq / c_abs;
        const double theta = (aqq - app) / (2.0 * c_abs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        // W = diag(1, conj(phase)) * [[cs, sn], [-sn, cs]]
        const Complex w00 = cs;
        const Complex w01 = sn;
        const Complex w10 = -sn * std::conj(phase);
        const Complex w11 = cs * std::conj(phase);
        for (std::size_t i = 0; i < n; ++i) {  // A <- A W
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * w00 + aiq * w10;
          a(i, q) = aip * w01 + aiq * w11;
        }
        for (std::size_t j = 0; j < n; ++j) {  // A <- W* A
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = std::conj(w00) * apj + std::conj(w10) * aqj;
          a(q, j) = std::conj(w01) * apj + std::conj(w11) * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t i = 0; i < n; ++i) {  // V <- V W
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * w00 + viq * w10;
          v(i, q) = vip * w01 + viq * w11;
        }
      }
    }
  }
  if (!converged && off_norm() > tol::kJacobi * frob) {
    throw Error(ErrorCode::no_convergence, "Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0) return ComplexMatrix(0, m);
  if (m < n) throw Error(ErrorCode::rank_deficient, "fewer rows than columns");
  if (!a.all_finite()) throw Error(ErrorCode::invalid_argument, "non-finite entry");

  ComplexMatrix r = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<ComplexVector> reflectors;
  reflectors.reserve(n);

  for (std::size_t j = 0; j < n; ++j) {
    // Pivot on the largest remaining column norm (recomputed; n is small).
    std::size_t best = j;
    double best_norm = -1.0;
    for (std::size_t c = j; c < n; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < m; ++i) s += std::norm(r(i, c));
      if (s > best_norm) {
        best_norm = s;
        best = c;
      }
    }
    if (best != j) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, j), r(i, best));
      std::swap(perm[j], perm[best]);
    }

    ComplexVector x(m - j);
    for (std::size_t i = j; i < m; ++i) x[i - j] = r(i, j);
    const double xnorm = norm2(x);
    ComplexVector vvec(m - j, Complex{});
    if (xnorm > 0.0) {
      const Complex x0 = x[0];
      const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
      const Complex alpha = -phase * xnorm;
      vvec = x;
      vvec[0] -= alpha;
      const double vn = norm2(vvec);
      if (vn > 0.0) {
        for (auto& z : vvec) z /= vn;
        // R[j:, j:] <- (I - 2 v v*) R[j:, j:]
        for (std::size_t c = j; c < n; ++c) {
          Complex dot{};
          for (std::size_t i = j; i < m; ++i) dot += std::conj(vvec[i - j]) * r(i, c);
          for (std::size_t i = j; i < m; ++i) r(i, c) -= 2.0 * vvec[i - j] * dot;
        }
      }
    }
    reflectors.push_back(std::move(vvec));
  }

  double rmax = 0.0;
  double rmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    rmax = std::max(rmax, std::abs(r(j, j)));
    rmin = std::min(rmin, std::abs(r(j, j)));
  }
  if (rmax == 0.0 || rmin <= tol::kRank * rmax) {
    throw Error(ErrorCode::rank_deficient, "min |R_jj| / max |R_jj| = " + std::to_string(rmax == 0.0 ? 0.0 : rmin / rmax));
  }

  // Thin Q = H_1 ... H_n [I_n; 0], built by applying reflectors in reverse.
  ComplexMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    const auto& vv = reflectors[j];
    for (std::size_t c = 0; c < n; ++c) {
      Complex dot{};
      for (std::size_t i = j; i < m; ++i) dot += std::conj(vv[i - j]) * q(i, c);
      if (dot == Complex{}) continue;
      for (std::size_t i = j; i < m; ++i) q(i, c) -= 2.0 * vv[i - j] * dot;
    }
  }

  // Back-substitute R X = Q*.
  ComplexMatrix xsol(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex acc = std::conj(q(c, ii));
      for (std::size_t l = ii + 1; l < n; ++l) acc -= r(ii, l) * xsol(l, c);
      xsol(ii, c) = acc / r(ii, ii);
    }
  }
  ComplexMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < m; ++c) out(perm[i], c) = xsol(i, c);
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  if (!a.all_finite()) throw Error(ErrorCode::invalid_argument, "non-finite entry");
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  ComplexMatrix s = a * Complex(1.0 / scale);
  const ComplexMatrix gram = s.rows() >= s.cols() ? s.adjoint() * s : s * s.adjoint();
  // Gram matrices are Hermitian up to rounding; symmetrize before the solve.
  ComplexMatrix sym = gram;
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = 0; j < sym.cols(); ++j) sym(i, j) = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
  const auto eig = hermitian_eig(sym);
  return scale * std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

double inf_to_two_norm_upper(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row_sum += std::abs(a(i, j));
    acc += row_sum * row_sum;
  }
  return std::sqrt(acc);
}

}  // namespace altdec
