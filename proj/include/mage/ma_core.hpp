#pragma once

// Monge-Ampere structures (Omega, alpha) on the phase space, with
//   alpha = A dp^dy + B (dx^dp - dy^dq) + C dx^dq + D dp^dq + E dx^dy
//   Omega = dx^dp + dy^dq.

#include <optional>
#include <string>
#include <utility>

#include "mage/exterior.hpp"
#include "mage/gen_endo.hpp"
#include "mage/matrix.hpp"

namespace mage {

struct MAStructure {
  Expr A, B, C, D, E;

  DifferentialForm alpha() const;
  /// Reads the coefficients off an effective 2-form. Throws DomainError if the
  /// dx^dp and -dy^dq coefficients differ or the form is not of degree 2.
  static MAStructure from_form(const DifferentialForm& alpha);

  friend bool operator==(const MAStructure&, const MAStructure&) = default;
};

enum class MAType { Elliptic, Hyperbolic, Degenerate, Indefinite };
std::string_view type_name(MAType t);

struct MAClass {
  MAType type = MAType::Degenerate;
  Expr pfaffian;
  bool exact = false;  // decided without sampling
  int sign() const { return type == MAType::Elliptic ? 1 : type == MAType::Hyperbolic ? -1 : 0; }
};

/// -B^2 + AC - DE. Cross-checks alpha^alpha = Pf Omega^Omega and throws
/// InternalError if the two disagree.
Expr pfaffian(const MAStructure& m);
/// Pf from the wedge definition alone: coefficient ratio of alpha^alpha to Omega^Omega.
Expr pfaffian_by_wedge(const MAStructure& m);

MAClass classify(const MAStructure& m, const SampleOptions& opts = {});

/// alpha scaled by |Pf|^(-1/2). Throws DomainError("normalization undefined")
/// unless the structure is elliptic or hyperbolic.
MAStructure normalize(const MAStructure& m, const SampleOptions& opts = {});

/// Component matrices a_ij = alpha(d_i, d_j) and w_ij = Omega(d_i, d_j).
ExprMatrix alpha_components(const MAStructure& m);
ExprMatrix omega_components();
/// sigma_sharp(X) = X _| sigma acting on column vectors: the transpose of the
/// component matrix.
ExprMatrix sharp(const ExprMatrix& components);
/// A_alpha = pi_Omega_sharp o alpha_sharp.
ExprMatrix a_alpha(const MAStructure& m);

/// |Pf|^(-1/2) A_alpha; requires an elliptic or hyperbolic structure.
ExprMatrix rho(const MAStructure& m, const SampleOptions& opts = {});
/// Zero verdict for rho^2 + sgn(Pf) Id.
ZeroVerdict rho_square_law(const MAStructure& m, const SampleOptions& opts = {});

/// Zero verdict for d(alpha / sqrt|Pf|); zero means rho is integrable.
ZeroVerdict integrability(const MAStructure& m, const SampleOptions& opts = {});

/// Matrix of the symmetric form g. Cross-checks against the wedge quotient
/// with vol = dx^dy and throws InternalError on disagreement.
ExprMatrix lr_metric(const MAStructure& m);
ExprMatrix lr_metric_by_wedge(const MAStructure& m);

/// Counts (positive, negative) eigenvalues of a symmetric matrix at the
/// sample points; nullopt if the count varies or a point is singular.
std::optional<std::pair<int, int>> signature(const ExprMatrix& sym, const SampleOptions& opts = {});

/// dx^dy coefficient of the pullback of alpha along df.
Expr pde_residual(const MAStructure& m, const StreamFunction& f);

/// Zero verdict for Omega_sharp A_alpha - A_alpha^T Omega_sharp.
ZeroVerdict hitchin_pair_check(const MAStructure& m, const SampleOptions& opts = {});

struct BanosResult {
  GenEndo J;
  ZeroVerdict divergence;  // verdict for d(alpha + phi Omega)
  bool divergence_free() const { return divergence.zero(); }
};
BanosResult banos_structure(const MAStructure& m, const Expr& phi, const SampleOptions& opts = {});

/// Named examples used throughout.
MAStructure laplace_structure();
MAStructure von_karman_structure();

}  // namespace mage
