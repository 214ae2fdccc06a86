#pragma once

// Finite-dimensional matrix algebras spanned by products of constant
// generalized structures, with their Lie and Jordan products.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mage/gen_endo.hpp"
#include "mage/matrix.hpp"

namespace mage {

enum class ProductKind { Associative, Lie, Jordan };
std::string_view product_name(ProductKind k);

/// A*B, [A,B] or (AB + BA)/2.
RatMatrix product(ProductKind k, const RatMatrix& a, const RatMatrix& b);

struct MatAlgebra {
  std::vector<RatMatrix> basis;
  std::vector<std::string> labels;
  /// constants[i][j] = coordinates of basis[i] * basis[j].
  std::vector<std::vector<std::vector<Rational>>> constants;

  std::size_t dim() const { return basis.size(); }
  /// Coordinates of m in the basis, or nullopt if m is outside the span.
  std::optional<std::vector<Rational>> coordinates(const RatMatrix& m) const;
  RatMatrix element(const std::vector<Rational>& coords) const;
};

/// Closes {Id} + generators under the matrix product, adding products in
/// breadth-first order while they are linearly independent. Throws
/// DomainError("algebra closure requires constant structures").
MatAlgebra close_algebra(const std::vector<GenEndo>& generators);

using ProductTable = std::vector<std::vector<std::vector<Rational>>>;
/// Throws InternalError if a product leaves the span.
ProductTable product_table(const MatAlgebra& a, ProductKind kind);
/// Human-readable entry of a product table, e.g. "2*J3" or "-Id".
std::string describe_element(const MatAlgebra& a, const std::vector<Rational>& coords);

struct IdentityCheck {
  bool holds = true;
  int checked = 0;
  std::optional<std::array<std::size_t, 3>> witness;  // basis indices of the first failure
};

/// [A, BC] = [A,B]C + B[A,C] on all basis triples.
IdentityCheck verify_leibniz(const MatAlgebra& a);
/// [A, B.C] = [A,B].C + B.[A,C] on all basis triples.
IdentityCheck verify_jordan_leibniz(const MatAlgebra& a);
/// (A.B).(A.A) = A.(B.(A.A)) on all basis pairs and `random_checks` random
/// rational combinations drawn with `seed`.
IdentityCheck verify_jordan_identity(const MatAlgebra& a, std::uint64_t seed = 0x4D41, int random_checks = 50);
/// q^2 [[A,C],B] = (A.B).C - A.(B.C) on all basis triples.
IdentityCheck verify_lie_jordan(const MatAlgebra& a, const Rational& q_squared);

}  // namespace mage
