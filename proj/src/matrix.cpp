#include "mage/matrix.hpp"

#include <utility>

namespace mage {

ZeroVerdict is_zero(const ExprMatrix& m, const SampleOptions& opts) {
  std::vector<ZeroVerdict> verdicts;
  for (const Expr& e : m.data()) {
    if (e.is_zero_structural()) continue;
    verdicts.push_back(is_zero(e, opts));
    if (!verdicts.back().zero()) break;
  }
  return combine(verdicts);
}

bool is_structurally_zero(const ExprMatrix& m) {
  for (const Expr& e : m.data())
    if (!e.is_zero_structural()) return false;
  return true;
}

ExprMatrix to_expr(const RatMatrix& m) {
  ExprMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Expr(m(i, j));
  return r;
}

std::optional<RatMatrix> to_rational(const ExprMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = m(i, j).constant();
      if (!c) return std::nullopt;
      r(i, j) = *c;
    }
  return r;
}

Eigen::MatrixXd evaluate(const ExprMatrix& m, const Point4& pt) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(m(i, j), pt);
  return r;
}

namespace {

template <class T>
bool is_nonzero(const T& v) {
  if constexpr (std::is_same_v<T, Expr>)
    return !v.is_zero_structural();
  else
    return v != 0;
}

template <class T>
T bareiss(Matrix<T> a) {
  std::size_t n = a.rows();
  if (n != a.cols()) throw InternalError("determinant of a non-square matrix");
  if (n == 0) return T(1);
  T sign(1), prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!is_nonzero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && !is_nonzero(a(p, k))) ++p;
      if (p == n) return T(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <class T>
Matrix<T> gauss_jordan_inverse(const Matrix<T>& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw InternalError("inverse of a non-square matrix");
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && !is_nonzero(a(p, k))) ++p;
    if (p == n) throw DomainError("matrix is singular");
    if (p != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(p, c));
        std::swap(inv(k, c), inv(p, c));
      }
    T pivot = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) = a(k, c) / pivot;
      inv(k, c) = inv(k, c) / pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !is_nonzero(a(i, k))) continue;
      T f = a(i, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(i, c) = a(i, c) - f * a(k, c);
        inv(i, c) = inv(i, c) - f * inv(k, c);
      }
    }
  }
  return inv;
}

}  // namespace

Expr determinant(const ExprMatrix& m) { return bareiss(m); }
Rational determinant(const RatMatrix& m) { return bareiss(m); }

ExprMatrix inverse(const ExprMatrix& m) { return gauss_jordan_inverse(m); }
RatMatrix inverse(const RatMatrix& m) { return gauss_jordan_inverse(m); }

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<std::string>> to_strings(const ExprMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).str());
  return out;
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

}  // namespace mage
