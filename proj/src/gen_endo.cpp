#include "mage/gen_endo.hpp"

namespace mage {

GenEndo GenEndo::diagonal(const ExprMatrix& top, const ExprMatrix& bottom, std::string label) {
  ExprMatrix zero(4, 4);
  return {ExprMatrix::from_blocks(top, zero, zero, bottom), BlockShape::Diagonal, std::move(label)};
}

GenEndo GenEndo::antidiagonal(const ExprMatrix& upper, const ExprMatrix& lower, std::string label) {
  ExprMatrix zero(4, 4);
  return {ExprMatrix::from_blocks(zero, upper, lower, zero), BlockShape::Antidiagonal, std::move(label)};
}

const RatMatrix& eta_matrix() {
  static const RatMatrix eta = [] {
    RatMatrix m(8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, i + 4) = Rational(1, 2);
      m(i + 4, i) = Rational(1, 2);
    }
    return m;
  }();
  return eta;
}

ExprMatrix eta_expr() { return to_expr(eta_matrix()); }

}  // namespace mage
