#pragma once

// Dense complex linear algebra used by every frame, dual and identity check.
// Matrices are small (at most a few thousand rows, k <= ~100 columns), so all
// routines are straightforward O(n^3) dense algorithms with fixed iteration
// orders for reproducibility.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace altdec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

namespace tol {
/// Relative rank threshold on the pivoted-QR diagonal used by dagger().
inline constexpr double kRank = 1e-12;
/// Relative off-diagonal Frobenius norm at which Jacobi sweeps stop.
inline constexpr double kJacobi = 1e-15;
inline constexpr int kJacobiMaxSweeps = 64;
/// Default symmetry tolerance for hermitian_eig().
inline constexpr double kHermitian = 1e-10;
}  // namespace tol

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, ComplexVector entries);
  /// Row-major nested initializer, mostly for tests.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix column(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexVector row(std::size_t i) const;
  ComplexVector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const Complex> v);

  /// Rows [first, first + count).
  ComplexMatrix row_block(std::size_t first, std::size_t count) const;
  /// Rows first, first + step, ... (0-based), `count` of them.
  ComplexMatrix strided_rows(std::size_t first, std::size_t step, std::size_t count) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  bool all_finite() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ComplexVector data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

ComplexMatrix power(const ComplexMatrix& a, int exponent);

/// max_ij |A_ij|
double max_abs(const ComplexMatrix& a);
/// max_ij |A_ij - B_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const Complex> v);
double norm_inf(std::span<const Complex> v);
ComplexVector subtract(std::span<const Complex> a, std::span<const Complex> b);

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, eigenvectors in columns
};

/// Cyclic Jacobi eigensolver for a Hermitian matrix. Sweeps visit (p, q),
/// p < q, in row-major order.
/// Throws NotHermitian when max|H - H*| > symmetry_tol, NoConvergence after
/// tol::kJacobiMaxSweeps sweeps.
HermitianEig hermitian_eig(const ComplexMatrix& h, double symmetry_tol = tol::kHermitian);

/// Canonical left inverse (A*A)^{-1}A* computed through Householder QR with
/// column pivoting (A P = Q R, A^dagger = P R^{-1} Q*). Throws RankDeficient
/// when A has fewer rows than columns or min|R_jj| <= tol::kRank * max|R_jj|.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// sqrt(sum_i (sum_j |A_ij|)^2): a certified upper bound on the
/// l_inf -> l_2 operator norm, exact only for special matrices.
double inf_to_two_norm_upper(const ComplexMatrix& a);

}  // namespace altdec
