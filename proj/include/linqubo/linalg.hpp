#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace linqubo {

/// Dense real vector. All entries are finite.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  std::size_t dim() const noexcept { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  std::span<const double> entries() const noexcept { return data_; }

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

/// Dense real matrix, row-major. All entries are finite.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const double> entries() const noexcept { return data_; }

  Matrix transposed() const;
  double max_abs() const noexcept;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Vector operator*(const Matrix& lhs, const Vector& rhs);
double dot(const Vector& lhs, const Vector& rhs);

/// The pair (A, b) of a system Ax = b. A.rows() == b.dim().
struct LinearSystem {
  Matrix A;
  Vector b;

  LinearSystem(Matrix a, Vector rhs);
};

/// R nonsingular upper triangular and D diagonal with R^T M R = diag(D),
/// where M is the Gram matrix the decomposition was computed from.
struct CongruenceDecomposition {
  Matrix R;
  Vector D;
  Vector scale;
  /// Set when some pivot was within tolerance of zero (rank-deficient M).
  bool singular_warning = false;
};

/// A^T A.
Matrix gram(const Matrix& A);

/// Symmetric Gaussian elimination of a positive semidefinite M into
/// unit-upper-triangular R0 and pivots p; the returned R is R0 with column j
/// multiplied by scale[j] and D[j] = p[j] * scale[j]^2. Tolerance is
/// 1e-9 * max|M_ij|. Zero pivots leave the column untouched and set D[j] = 0.
/// Throws NotSymmetric, NotPSD, or DimensionMismatch.
CongruenceDecomposition congruence_diagonalize(const Matrix& M);
CongruenceDecomposition congruence_diagonalize(const Matrix& M, const Vector& scale);

/// Decomposition from an externally supplied R: D is read off the diagonal of
/// R^T M R, which must be diagonal within tolerance.
CongruenceDecomposition congruence_from_r(const Matrix& M, Matrix R);

struct CongruenceSolution {
  Vector y;
  Vector x;
};

/// Real minimizer of y^T D y - 2 (b^T A R) y, with x = R y. Components whose
/// d_ii is within tolerance of zero are set to 0.
CongruenceSolution solve_via_congruence(const LinearSystem& sys,
                                        const CongruenceDecomposition& dec);

/// ||Ax - b||^2.
double residual_norm_sq(const LinearSystem& sys, const Vector& x);

}  // namespace linqubo
