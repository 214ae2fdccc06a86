#pragma once

// Endomorphisms of the generalized tangent bundle TM + T*M over the phase
// space. Basis order: (d/dx, d/dy, d/dp, d/dq, dx, dy, dp, dq).

#include <string>

#include "mage/matrix.hpp"

namespace mage {

enum class BlockShape { General, Diagonal, Antidiagonal };

struct GenEndo {
  ExprMatrix matrix = ExprMatrix(8, 8);
  BlockShape shape = BlockShape::General;
  std::string label;

  static GenEndo diagonal(const ExprMatrix& top, const ExprMatrix& bottom, std::string label = {});
  static GenEndo antidiagonal(const ExprMatrix& upper, const ExprMatrix& lower, std::string label = {});
};

/// The neutral pairing, stored as 1/2 [[0, I], [I, 0]].
const RatMatrix& eta_matrix();
ExprMatrix eta_expr();

}  // namespace mage
