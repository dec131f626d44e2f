#include "linqubo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

constexpr double kRelTol = 1e-9;

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DimensionMismatch(std::string(what) + " contains a non-finite entry");
    }
  }
}

void require_square(const Matrix& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw DimensionMismatch(std::string(what) + " must be square and nonempty");
  }
}

void check_symmetric(const Matrix& M, double tol) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = i + 1; j < M.cols(); ++j) {
      if (std::abs(M(i, j) - M(j, i)) > tol) {
        throw NotSymmetric("matrix is not symmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill) {}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "vector");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_finite(data_, "vector");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix entry count does not equal rows * cols");
  }
  require_finite(data_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Matrix Matrix::transposed() const {
  Matrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Vector operator*(const Matrix& lhs, const Vector& rhs) {
  if (lhs.cols() != rhs.dim()) throw DimensionMismatch("matrix-vector shape mismatch");
  Vector out(lhs.rows());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < lhs.cols(); ++j) s += lhs(i, j) * rhs[j];
    out[i] = s;
  }
  return out;
}

double dot(const Vector& lhs, const Vector& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionMismatch("dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < lhs.dim(); ++i) s += lhs[i] * rhs[i];
  return s;
}

LinearSystem::LinearSystem(Matrix a, Vector rhs) : A(std::move(a)), b(std::move(rhs)) {
  if (A.cols() == 0 || A.rows() == 0) throw DimensionMismatch("system matrix is empty");
  if (A.rows() != b.dim()) {
    throw DimensionMismatch("right-hand side has " + std::to_string(b.dim()) +
                            " entries but A has " + std::to_string(A.rows()) + " rows");
  }
}

Matrix gram(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) throw DimensionMismatch("gram of empty matrix");
  const std::size_t n = A.cols();
  Matrix G(n, n);
  // Fill the upper triangle and mirror, so G - G^T is exactly zero.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < A.rows(); ++k) s += A(k, i) * A(k, j);
      G(i, j) = s;
      G(j, i) = s;
    }
  return G;
}

CongruenceDecomposition congruence_diagonalize(const Matrix& M) {
  return congruence_diagonalize(M, Vector(M.cols(), 1.0));
}

CongruenceDecomposition congruence_diagonalize(const Matrix& M, const Vector& scale) {
  require_square(M, "Gram matrix");
  const std::size_t n = M.rows();
  if (scale.dim() != n) throw DimensionMismatch("scale length must equal matrix order");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(scale[j] > 0.0)) throw DimensionMismatch("scale entries must be positive");
  }
  const double tol = kRelTol * M.max_abs();
  check_symmetric(M, tol);

  // W holds the trailing Schur complement; R accumulates the column operations.
  Matrix W = M;
  Matrix R = Matrix::identity(n);
  Vector pivots(n);
  bool singular = false;

  for (std::size_t k = 0; k < n; ++k) {
    const double p = W(k, k);
    if (p < -tol) {
      throw NotPSD("negative pivot " + std::to_string(p) + " at index " + std::to_string(k));
    }
    if (p <= tol) {
      singular = true;
      pivots[k] = 0.0;
      continue;
    }
    pivots[k] = p;
    for (std::size_t j = k + 1; j < n; ++j) {
      const double f = W(k, j) / p;
      if (f == 0.0) continue;
      for (std::size_t i = 0; i <= k; ++i) R(i, j) -= f * R(i, k);
      for (std::size_t i = k + 1; i < n; ++i) W(i, j) -= f * W(i, k);
    }
  }

  CongruenceDecomposition dec{std::move(R), Vector(n), scale, singular};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) dec.R(i, j) *= scale[j];
    dec.D[j] = pivots[j] * scale[j] * scale[j];
  }
  return dec;
}

CongruenceDecomposition congruence_from_r(const Matrix& M, Matrix R) {
  require_square(M, "Gram matrix");
  if (R.rows() != M.rows() || R.cols() != M.cols()) {
    throw DimensionMismatch("R must be square with the order of the Gram matrix");
  }
  const std::size_t n = M.rows();
  const Matrix C = R.transposed() * M * R;
  const double tol = kRelTol * std::max(C.max_abs(), M.max_abs());
  CongruenceDecomposition dec{std::move(R), Vector(n), Vector(n, 1.0), false};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::abs(C(i, j)) > tol) {
        throw NotSymmetric("R^T M R is not diagonal at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
    }
    const double d = C(i, i);
    if (d < -tol) throw NotPSD("negative diagonal entry in R^T M R");
    if (d <= tol) dec.singular_warning = true;
    dec.D[i] = d <= tol ? 0.0 : d;
  }
  return dec;
}

CongruenceSolution solve_via_congruence(const LinearSystem& sys,
                                        const CongruenceDecomposition& dec) {
  const std::size_t n = sys.A.cols();
  if (dec.R.rows() != n || dec.D.dim() != n) {
    throw DimensionMismatch("decomposition does not match the system");
  }
  // (b^T A R)^T = R^T A^T b
  const Vector atb = sys.A.transposed() * sys.b;
  const Vector linear = dec.R.transposed() * atb;
  double dmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(dec.D[i]));
  const double tol = kRelTol * dmax;

  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = dec.D[i] > tol ? linear[i] / dec.D[i] : 0.0;
  return {y, dec.R * y};
}

double residual_norm_sq(const LinearSystem& sys, const Vector& x) {
  const Vector ax = sys.A * x;
  double s = 0.0;
  for (std::size_t i = 0; i < ax.dim(); ++i) {
    const double r = ax[i] - sys.b[i];
    s += r * r;
  }
  return s;
}

}  // namespace linqubo
