#pragma once

// Dense matrices over Expr (symbolic) and Rational (exact constants).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mage/errors.hpp"
#include "mage/expr.hpp"

namespace mage {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InternalError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  /// [[a, b], [c, d]] from four equally sized square blocks.
  static Matrix from_blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    std::size_t n = a.rows();
    Matrix m(2 * n, 2 * n);
    m.set_block(0, 0, a);
    m.set_block(0, n, b);
    m.set_block(n, 0, c);
    m.set_block(n, n, d);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = -v;
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = s * v;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ExprMatrix = Matrix<Expr>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}
template <class T>
Matrix<T> anticommutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b + b * a;
}

/// Zero-tests every entry and folds the verdicts.
ZeroVerdict is_zero(const ExprMatrix& m, const SampleOptions& opts = {});
bool is_structurally_zero(const ExprMatrix& m);

ExprMatrix to_expr(const RatMatrix& m);
/// Exact conversion when every entry is a rational constant.
std::optional<RatMatrix> to_rational(const ExprMatrix& m);

Eigen::MatrixXd evaluate(const ExprMatrix& m, const Point4& pt);

/// Determinant by fraction-free elimination (Bareiss), exact.
Expr determinant(const ExprMatrix& m);
Rational determinant(const RatMatrix& m);

/// Inverse by Gauss-Jordan elimination with structurally nonzero pivots.
/// Throws DomainError when the matrix is singular.
ExprMatrix inverse(const ExprMatrix& m);
RatMatrix inverse(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Rows of strings, one per matrix row, for reports.
std::vector<std::vector<std::string>> to_strings(const ExprMatrix& m);
std::vector<std::vector<std::string>> to_strings(const RatMatrix& m);

}  // namespace mage
