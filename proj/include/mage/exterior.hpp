#pragma once

// Exterior calculus on the phase space with coordinates (x, y, p, q).
//
// A k-form is stored as a map from basis masks to coefficients. Bit i of a
// mask selects the i-th coordinate differential (dx, dy, dp, dq), so the
// basis element for mask 0b0101 is dx^dp. Within a mask the differentials are
// always taken in increasing order.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mage/expr.hpp"

namespace mage {

using FormMask = std::uint8_t;

inline constexpr FormMask kDx = 1, kDy = 2, kDp = 4, kDq = 8;

class DifferentialForm {
 public:
  explicit DifferentialForm(int degree = 0);

  /// coefficient * d(coordinate) wedged in increasing order.
  static DifferentialForm basis(FormMask mask, const Expr& coefficient = Expr(1));
  static DifferentialForm function(const Expr& f) { return basis(0, f); }

  int degree() const { return degree_; }
  const std::map<FormMask, Expr>& terms() const { return terms_; }
  Expr coefficient(FormMask mask) const;
  void add(FormMask mask, const Expr& coefficient);

  bool is_zero_structural() const { return terms_.empty(); }

  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a);
  friend DifferentialForm operator*(const Expr& s, const DifferentialForm& a);
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);

  std::string str() const;

 private:
  int degree_;
  std::map<FormMask, Expr> terms_;
};

/// Name of a basis element, e.g. "dx^dp"; "1" for the empty mask.
std::string mask_name(FormMask mask);
/// The index tuple of a mask, e.g. {0, 2} for dx^dp.
std::vector<int> mask_indices(FormMask mask);

struct VectorField {
  std::array<Expr, 4> components{};

  static VectorField coordinate(Symbol s);

  Expr& operator[](Symbol s) { return components[static_cast<int>(s)]; }
  const Expr& operator[](Symbol s) const { return components[static_cast<int>(s)]; }

  /// Directional derivative X(f).
  Expr apply(const Expr& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& s, const VectorField& a);
  friend bool operator==(const VectorField& a, const VectorField& b) = default;

  bool is_zero_structural() const;
  std::string str() const;
};

/// A form on the base with coordinates (x, y) only.
class BaseForm {
 public:
  /// Throws DomainError if the form involves dp, dq or coefficients in p, q.
  explicit BaseForm(const DifferentialForm& form);

  int degree() const { return form_.degree(); }
  const DifferentialForm& form() const { return form_; }
  Expr coefficient(FormMask mask) const { return form_.coefficient(mask); }
  std::string str() const { return form_.str(); }

  friend bool operator==(const BaseForm& a, const BaseForm& b) = default;

 private:
  DifferentialForm form_;
};

/// A function f(x, y) on the base.
class StreamFunction {
 public:
  /// Throws DomainError if f depends on p or q.
  explicit StreamFunction(Expr f);
  const Expr& expr() const { return f_; }

 private:
  Expr f_;
};

/// Degree is capped at 4; a product of higher degree is the zero 4-form.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
/// Contraction in the first slot. Throws DomainError on 0-forms.
DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a);
VectorField lie_bracket(const VectorField& a, const VectorField& b);
/// Cartan's formula.
DifferentialForm lie_derivative(const VectorField& v, const DifferentialForm& a);
/// Pullback along the section df of the cotangent bundle.
BaseForm pullback_df(const DifferentialForm& a, const StreamFunction& f);

ZeroVerdict is_zero(const DifferentialForm& a, const SampleOptions& opts = {});
ZeroVerdict is_zero(const VectorField& v, const SampleOptions& opts = {});

/// The symplectic form dx^dp + dy^dq.
DifferentialForm symplectic_form();

}  // namespace mage
