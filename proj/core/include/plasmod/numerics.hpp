#pragma once

// Small dense linear algebra: LU solves, real nonsymmetric eigenproblems and
// companion-matrix polynomial roots. Sized for the 2..64 dimensional systems
// that show up in layered-sphere problems; nothing here is meant to scale.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "plasmod/error.hpp"

namespace plasmod {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxMatrixDim = 64;

/// Row-major dense matrix with 1..64 rows and columns.
template <typename T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0 || rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
      throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must lie in [1, 64]");
    }
    data_.assign(rows * cols, T{});
  }

  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> row_major)
      : Matrix(rows, cols) {
    if (row_major.size() != rows * cols) {
      throw Error(ErrorCode::kInvalidArgument, "initializer size does not match rows*cols");
    }
    std::copy(row_major.begin(), row_major.end(), data_.begin());
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

ComplexMatrix to_complex(const RealMatrix& m);

/// Maximum absolute row sum.
double inf_norm(const RealMatrix& m);
double inf_norm(const ComplexMatrix& m);
double inf_norm(std::span<const Complex> v);
double inf_norm(std::span<const double> v);

std::vector<Complex> multiply(const ComplexMatrix& a, std::span<const Complex> x);
std::vector<double> multiply(const RealMatrix& a, std::span<const double> x);

/// Gaussian elimination with partial pivoting. Throws kSingularMatrix when a
/// pivot falls below 1e-14 * ||A||_inf.
std::vector<Complex> solve_linear(const ComplexMatrix& a, std::span<const Complex> b);
std::vector<double> solve_linear(const RealMatrix& a, std::span<const double> b);

/// LU determinant. Never throws on singular input; returns the exact product
/// of pivots, which may be zero.
double determinant(const RealMatrix& a);
Complex determinant(const ComplexMatrix& a);

struct EigenPair {
  Complex value;
  std::vector<Complex> vector;  // unit 2-norm
};

/// Eigenvalues only, sorted by (real, imag) ascending. Balancing, Hessenberg
/// reduction and Francis double-shift QR.
std::vector<Complex> eigenvalues_real(const RealMatrix& a);

/// Eigenpairs of a real square matrix, sorted by (real, imag) ascending.
/// Each eigenvector has unit Euclidean length and its first nonzero component
/// is rotated onto the positive real axis.
std::vector<EigenPair> eig_real(const RealMatrix& a);

inline constexpr std::size_t kMaxPolyDegree = 16;

/// Roots of sum_k coeffs[k] x^(n-k), highest degree first, via the companion
/// matrix. Sorted by (real, imag) ascending.
std::vector<Complex> poly_roots(std::span<const double> coeffs);

/// Horner evaluation, highest degree first.
Complex poly_eval(std::span<const double> coeffs, Complex x);

/// Least-squares slope of log|y| against log|x|.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped onto [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace plasmod
