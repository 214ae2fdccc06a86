#include "mage/ma_core.hpp"

#include <cmath>

#include "mage/errors.hpp"

namespace mage {

namespace {

constexpr FormMask kVolume = kDx | kDy | kDp | kDq;

Expr top_coefficient(const DifferentialForm& f) { return f.coefficient(kVolume); }

int sign_of(MAType t) { return t == MAType::Elliptic ? 1 : -1; }

MAClass require_nondegenerate(const MAStructure& m, const SampleOptions& opts, const char* what) {
  MAClass c = classify(m, opts);
  if (c.type == MAType::Degenerate || c.type == MAType::Indefinite)
    throw DomainError(std::string(what) + " undefined: structure is " +
                      std::string(type_name(c.type)) + " (Pf = " + c.pfaffian.str() + ")");
  return c;
}

Expr inverse_sqrt_abs(const Expr& pf) { return Expr(1) / sqrt(abs(pf)); }

void require_nondegenerate_form(const MAStructure& m, const SampleOptions& opts) {
  if (is_zero(pfaffian(m), opts).zero()) throw DomainError("alpha is degenerate as a 2-form");
}

}  // namespace

std::string_view type_name(MAType t) {
  switch (t) {
    case MAType::Elliptic: return "elliptic";
    case MAType::Hyperbolic: return "hyperbolic";
    case MAType::Degenerate: return "degenerate";
    case MAType::Indefinite: return "indefinite";
  }
  return "?";
}

DifferentialForm MAStructure::alpha() const {
  return DifferentialForm::basis(kDy | kDp, -A) + DifferentialForm::basis(kDx | kDp, B) +
         DifferentialForm::basis(kDy | kDq, -B) + DifferentialForm::basis(kDx | kDq, C) +
         DifferentialForm::basis(kDp | kDq, D) + DifferentialForm::basis(kDx | kDy, E);
}

MAStructure MAStructure::from_form(const DifferentialForm& alpha) {
  if (alpha.degree() != 2) throw DomainError("a Monge-Ampere form has degree 2");
  MAStructure m;
  m.A = -alpha.coefficient(kDy | kDp);
  m.B = alpha.coefficient(kDx | kDp);
  m.C = alpha.coefficient(kDx | kDq);
  m.D = alpha.coefficient(kDp | kDq);
  m.E = alpha.coefficient(kDx | kDy);
  if (!(alpha.coefficient(kDy | kDq) == -m.B))
    throw DomainError("form is not effective: dx^dp coefficient " + m.B.str() +
                      " differs from -(dy^dq coefficient) " + (-alpha.coefficient(kDy | kDq)).str());
  return m;
}

Expr pfaffian_by_wedge(const MAStructure& m) {
  DifferentialForm a = m.alpha();
  DifferentialForm omega = symplectic_form();
  return top_coefficient(wedge(a, a)) / top_coefficient(wedge(omega, omega));
}

Expr pfaffian(const MAStructure& m) {
  Expr pf = -m.B * m.B + m.A * m.C - m.D * m.E;
  Expr check = pfaffian_by_wedge(m);
  if (!(check == pf) && !is_zero(check - pf).zero())
    throw InternalError("Pfaffian self-check failed: " + pf.str() + " vs " + check.str());
  return pf;
}

MAClass classify(const MAStructure& m, const SampleOptions& opts) {
  MAClass c;
  c.pfaffian = pfaffian(m);
  if (c.pfaffian.is_zero_structural()) {
    c.type = MAType::Degenerate;
    c.exact = true;
    return c;
  }
  if (auto k = c.pfaffian.constant()) {
    c.type = *k > 0 ? MAType::Elliptic : MAType::Hyperbolic;
    c.exact = true;
    return c;
  }
  int pos = 0, neg = 0, zero = 0;
  for (const Point4& pt : sample_points(opts)) {
    double v;
    try {
      v = evaluate(c.pfaffian, pt);
    } catch (const DomainError&) {
      continue;
    }
    if (!std::isfinite(v)) continue;
    if (std::abs(v) < opts.tolerance)
      ++zero;
    else if (v > 0)
      ++pos;
    else
      ++neg;
  }
  if (pos + neg + zero == 0) throw DomainError("no valid sample points");
  if (pos == 0 && neg == 0)
    c.type = MAType::Degenerate;
  else if (zero == 0 && neg == 0)
    c.type = MAType::Elliptic;
  else if (zero == 0 && pos == 0)
    c.type = MAType::Hyperbolic;
  else
    c.type = MAType::Indefinite;
  return c;
}

MAStructure normalize(const MAStructure& m, const SampleOptions& opts) {
  MAClass c = require_nondegenerate(m, opts, "normalization");
  Expr s = inverse_sqrt_abs(c.pfaffian);
  MAStructure n{s * m.A, s * m.B, s * m.C, s * m.D, s * m.E};
  Expr residual = pfaffian(n) - Expr(sign_of(c.type));
  if (!is_zero(residual, opts).zero())
    throw InternalError("normalized Pfaffian is not +-1: " + pfaffian(n).str());
  return n;
}

ExprMatrix alpha_components(const MAStructure& m) {
  // a_xy = E, a_xp = B, a_xq = C, a_yp = -A, a_yq = -B, a_pq = D
  const Expr& A = m.A;
  const Expr& B = m.B;
  const Expr& C = m.C;
  const Expr& D = m.D;
  const Expr& E = m.E;
  Expr z;
  return ExprMatrix{{z, E, B, C}, {-E, z, -A, -B}, {-B, A, z, D}, {-C, B, -D, z}};
}

ExprMatrix omega_components() {
  ExprMatrix w(4, 4);
  w(0, 2) = Expr(1);
  w(2, 0) = Expr(-1);
  w(1, 3) = Expr(1);
  w(3, 1) = Expr(-1);
  return w;
}

ExprMatrix sharp(const ExprMatrix& components) { return components.transpose(); }

ExprMatrix a_alpha(const MAStructure& m) {
  return inverse(sharp(omega_components())) * sharp(alpha_components(m));
}

ExprMatrix rho(const MAStructure& m, const SampleOptions& opts) {
  MAClass c = require_nondegenerate(m, opts, "rho");
  return inverse_sqrt_abs(c.pfaffian) * a_alpha(m);
}

ZeroVerdict rho_square_law(const MAStructure& m, const SampleOptions& opts) {
  MAClass c = require_nondegenerate(m, opts, "rho");
  ExprMatrix r = inverse_sqrt_abs(c.pfaffian) * a_alpha(m);
  return is_zero(r * r + Expr(sign_of(c.type)) * ExprMatrix::identity(4), opts);
}

ZeroVerdict integrability(const MAStructure& m, const SampleOptions& opts) {
  MAStructure n = normalize(m, opts);
  return is_zero(exterior_derivative(n.alpha()), opts);
}

ExprMatrix lr_metric_by_wedge(const MAStructure& m) {
  DifferentialForm a = m.alpha();
  DifferentialForm omega = symplectic_form();
  DifferentialForm vol = DifferentialForm::basis(kDx | kDy);
  Expr oo = top_coefficient(wedge(omega, omega));
  ExprMatrix g(4, 4);
  for (Symbol si : kSymbols)
    for (Symbol sj : kSymbols) {
      VectorField X = VectorField::coordinate(si), Y = VectorField::coordinate(sj);
      DifferentialForm sym = wedge(interior_product(X, a), interior_product(Y, omega)) +
                             wedge(interior_product(Y, a), interior_product(X, omega));
      g(static_cast<int>(si), static_cast<int>(sj)) =
          Expr(2) * top_coefficient(wedge(sym, vol)) / oo;
    }
  return g;
}

ExprMatrix lr_metric(const MAStructure& m) {
  const Expr& A = m.A;
  const Expr& B = m.B;
  const Expr& C = m.C;
  const Expr& D = m.D;
  Expr z;
  ExprMatrix g{{Expr(2) * C, Expr(-2) * B, D, z}, {Expr(-2) * B, Expr(2) * A, z, D}, {D, z, z, z}, {z, D, z, z}};
  ExprMatrix check = lr_metric_by_wedge(m);
  if (!(check == g) && !is_zero(check - g).zero()) throw InternalError("metric self-check failed");
  return g;
}

std::optional<std::pair<int, int>> signature(const ExprMatrix& sym, const SampleOptions& opts) {
  std::optional<std::pair<int, int>> result;
  for (const Point4& pt : sample_points(opts)) {
    Eigen::MatrixXd g;
    try {
      g = evaluate(sym, pt);
    } catch (const DomainError&) {
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i]) < 1e-9 * scale) return std::nullopt;
      (ev[i] > 0 ? pos : neg) += 1;
    }
    if (result && *result != std::pair{pos, neg}) return std::nullopt;
    result = std::pair{pos, neg};
  }
  return result;
}

Expr pde_residual(const MAStructure& m, const StreamFunction& f) {
  return pullback_df(m.alpha(), f).coefficient(kDx | kDy);
}

ZeroVerdict hitchin_pair_check(const MAStructure& m, const SampleOptions& opts) {
  require_nondegenerate_form(m, opts);
  ExprMatrix w = sharp(omega_components());
  ExprMatrix a = a_alpha(m);
  return is_zero(w * a - a.transpose() * w, opts);
}

BanosResult banos_structure(const MAStructure& m, const Expr& phi, const SampleOptions& opts) {
  require_nondegenerate_form(m, opts);
  ExprMatrix w = sharp(omega_components());
  ExprMatrix pi = inverse(w);
  ExprMatrix a = a_alpha(m);
  ExprMatrix J = ExprMatrix::from_blocks(a, pi, -(w + w * a * a), -a.transpose());
  BanosResult r{{J, BlockShape::General, "J_alpha"}, {}};
  r.divergence = is_zero(exterior_derivative(m.alpha() + phi * symplectic_form()), opts);
  return r;
}

MAStructure laplace_structure() { return {Expr(-1), Expr(), Expr(-1), Expr(), Expr()}; }

MAStructure von_karman_structure() { return {kP, Expr(), Expr(1), Expr(), Expr()}; }

}  // namespace mage
