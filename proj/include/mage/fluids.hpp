#pragma once

// Incompressible planar flow: from a velocity snapshot to the pressure
// Poisson right-hand side and the Monge-Ampere structure of the stream
// function.

#include "mage/exterior.hpp"
#include "mage/ma_core.hpp"

namespace mage {

/// A velocity snapshot v = (a, b) on the plane. The viscosity is carried
/// along for completeness; no derived quantity depends on it.
struct VelocityField {
  Expr a, b;
  Rational viscosity = 0;

  /// Throws DomainError if a component depends on p or q.
  VelocityField(Expr a, Expr b, Rational viscosity = 0);
  /// v = (f_y, -f_x).
  static VelocityField from_stream(const StreamFunction& f);
};

/// Laplacian of the pressure with its sign on the sample box.
struct PressureData {
  Expr laplacian;
  int sign = 0;  // +1 or -1 when sign-definite, 0 otherwise
  bool exact = false;

  /// Throws DomainError if dP depends on p, q or vanishes identically.
  static PressureData from(const Expr& dP, const SampleOptions& opts = {});
};

Expr divergence(const VelocityField& v);
/// 2 (a_x b_y - a_y b_x). Throws DomainError if v is not divergence free.
Expr pressure_rhs(const VelocityField& v, const SampleOptions& opts = {});
/// Zero verdict for div(Laplacian v), cross-checked against the curl-curl form.
ZeroVerdict laplacian_divergence_identity(const VelocityField& v, const SampleOptions& opts = {});

/// D = sqrt(2/|dP|), E = -dP/sqrt|2 dP|. Throws DomainError if dP changes sign.
MAStructure stream_structure(const PressureData& dp);
Expr stream_residual(const StreamFunction& f, const PressureData& dp);

/// det Hess f.
Expr hessian_determinant(const StreamFunction& f);

}  // namespace mage
