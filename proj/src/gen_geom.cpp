#include "mage/gen_geom.hpp"

#include "mage/errors.hpp"

namespace mage {

namespace {

const ExprMatrix& id8() {
  static const ExprMatrix I = ExprMatrix::identity(8);
  return I;
}

// +1 / -1 when m = s * target, 0 otherwise.
int sign_relation(const ExprMatrix& m, const ExprMatrix& target, const SampleOptions& opts, bool* exact) {
  for (int s : {1, -1}) {
    ZeroVerdict v = is_zero(m - Expr(s) * target, opts);
    if (v.zero()) {
      if (exact && !v.exact()) *exact = false;
      return s;
    }
  }
  return 0;
}

ExprMatrix dual_map(const ExprMatrix& endo) { return inverse(endo).transpose(); }

int square_sign(const GenEndo& J, const SampleOptions& opts) {
  return sign_relation(J.matrix * J.matrix, id8(), opts, nullptr);
}

bool all_square_to_unit(const Triple& t, const SampleOptions& opts) {
  for (const GenEndo& j : t.J)
    if (square_sign(j, opts) == 0) return false;
  return true;
}

}  // namespace

std::string_view gen_name(GenName n) {
  switch (n) {
    case GenName::GaP: return "GaP";
    case GenName::GaPC: return "GaPC";
    case GenName::GaC: return "GaC";
    case GenName::GaAC: return "GaAC";
  }
  return "?";
}

GenName gen_name_for(int gamma1, int gamma2) {
  if (gamma1 == 1) return gamma2 == 1 ? GenName::GaP : GenName::GaPC;
  return gamma2 == 1 ? GenName::GaC : GenName::GaAC;
}

GenType classify_generalized(const GenEndo& J, const SampleOptions& opts) {
  const ExprMatrix& m = J.matrix;
  ExprMatrix eta = eta_expr();
  GenType t;
  t.gamma1 = sign_relation(m * m, id8(), opts, &t.exact);
  t.gamma2 = sign_relation(m.transpose() * eta * m, eta, opts, &t.exact);
  if (t.gamma1 == 0 || t.gamma2 == 0)
    throw DomainError("not a generalized almost structure" + (J.label.empty() ? "" : ": " + J.label));
  t.name = gen_name_for(t.gamma1, t.gamma2);
  t.isotropic = t.gamma1 * t.gamma2 == -1;
  return t;
}

std::string EpsilonTriple::str() const {
  auto s = [](int e) { return e > 0 ? std::string("1") : std::string("-1"); };
  return "(" + s(e1) + ", " + s(e2) + ", " + s(e3) + ")";
}

std::array<EpsilonTriple, 8> all_epsilon_triples() {
  std::array<EpsilonTriple, 8> out;
  for (int i = 0; i < 8; ++i)
    out[i] = {i & 4 ? -1 : 1, i & 2 ? -1 : 1, i & 1 ? -1 : 1};
  return out;
}

Triple make_triple(const EpsilonTriple& eps, const MAStructure& m, const SampleOptions& opts) {
  MAClass c = classify(m, opts);
  if (c.sign() == 0 || !is_zero(c.pfaffian - Expr(c.sign()), opts).zero())
    throw DomainError("triple requires a normalized structure with Pf = +-1, got Pf = " + c.pfaffian.str());
  ExprMatrix r = rho(m, opts);
  ExprMatrix a = alpha_components(m);
  ExprMatrix w = omega_components();
  Triple t{eps, {}, c.sign()};
  t.J[0] = GenEndo::diagonal(r, Expr(eps.e1) * dual_map(r), "J1");
  t.J[1] = GenEndo::antidiagonal(a, Expr(eps.e2) * a, "J2");
  t.J[2] = GenEndo::antidiagonal(w, Expr(eps.e3) * w, "J3");
  return t;
}

AnticommutatorReport anticommutator_report(const Triple& t, const SampleOptions& opts) {
  AnticommutatorReport r;
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  r.all_vanish = true;
  for (int k = 0; k < 3; ++k) {
    auto [i, j] = pairs[k];
    r.values[k] = anticommutator(t.J[i].matrix, t.J[j].matrix);
    r.verdicts[k] = is_zero(r.values[k], opts);
    r.all_vanish = r.all_vanish && r.verdicts[k].zero();
  }
  if (all_square_to_unit(t, opts) && r.all_vanish != t.anticommuting())
    throw InternalError("anticommutators disagree with e1 = sgn Pf, e2 = sgn Pf e3 for eps = " + t.eps.str());
  return r;
}

ProductReport product_identities(const Triple& t, const SampleOptions& opts) {
  if (!t.anticommuting() || !anticommutator_report(t, opts).all_vanish)
    throw DomainError("identities apply to anticommuting triples");
  ProductReport r;
  const auto& J = t.J;
  r.triple_product_sign = sign_relation(J[0].matrix * J[1].matrix * J[2].matrix, id8(), opts, nullptr);
  r.cyclic_law = true;
  for (int i = 0; i < 3; ++i) {
    r.cyclic_signs[i] = sign_relation(J[i].matrix * J[(i + 1) % 3].matrix, J[(i + 2) % 3].matrix, opts, nullptr);
    r.cyclic_law = r.cyclic_law && r.cyclic_signs[i] == 1;
  }
  bool all_complex = true;
  for (const GenEndo& j : J) all_complex = all_complex && square_sign(j, opts) == -1;
  r.hyper_type = all_complex ? "generalized hyper-complex" : "generalized hyper-para-complex";
  return r;
}

ComboResult combo_classify(const Rational& a1, const Rational& a2, const Rational& a3, const Triple& t,
                           const SampleOptions& opts) {
  ComboResult r;
  const std::array<Rational, 3> a{a1, a2, a3};
  r.s = 0;
  for (int i = 0; i < 3; ++i) {
    int square = square_sign(t.J[i], opts);
    if (square == 0) throw DomainError("combination law needs " + t.J[i].label + "^2 = +-Id");
    r.s -= square * a[i] * a[i];
  }
  r.A.matrix = Expr(a1) * t.J[0].matrix + Expr(a2) * t.J[1].matrix + Expr(a3) * t.J[2].matrix;
  r.A.label = "a1 J1 + a2 J2 + a3 J3";
  try {
    r.type = classify_generalized(r.A, opts);
  } catch (const DomainError&) {
    r.type.reset();
  }
  return r;
}

GenEndo generalized_metric(const MAStructure& m, const SampleOptions& opts) {
  ExprMatrix g = lr_metric(m);
  if (is_zero(determinant(g), opts).zero()) throw DomainError("g degenerate (D vanishes)");
  ExprMatrix g_sharp = sharp(g);
  return GenEndo::antidiagonal(inverse(g_sharp), g_sharp, "G");
}

GenEndo metric_partner(const MAStructure& m, const SampleOptions& opts) {
  MAClass c = classify(m, opts);
  ExprMatrix r = rho(m, opts);
  return GenEndo::diagonal(r, Expr(c.sign()) * r, "J");
}

std::string_view compatibility_name(Compatibility c) {
  switch (c) {
    case Compatibility::Kahler: return "generalized Kahler structure";
    case Compatibility::Chiral: return "generalized chiral structure";
    case Compatibility::Incompatible: return "incompatible";
  }
  return "?";
}

CompatibilityReport compatibility(const GenEndo& G, const GenEndo& J, const SampleOptions& opts) {
  GenType gt;
  try {
    gt = classify_generalized(G, opts);
  } catch (const DomainError&) {
    throw DomainError("G is not a generalized metric");
  }
  if (gt.name != GenName::GaP) throw DomainError("G is not a generalized metric (type " + std::string(gen_name(gt.name)) + ")");
  if (is_zero(determinant(G.matrix.block(4, 0, 4, 4)), opts).zero())
    throw DomainError("G is degenerate");
  CompatibilityReport r;
  r.commutator = is_zero(commutator(G.matrix, J.matrix), opts);
  try {
    r.partner_type = classify_generalized(J, opts);
  } catch (const DomainError&) {
    r.partner_type.reset();
  }
  if (r.commutator.zero() && r.partner_type) {
    if (r.partner_type->name == GenName::GaC) r.result = Compatibility::Kahler;
    if (r.partner_type->name == GenName::GaP) r.result = Compatibility::Chiral;
  }
  return r;
}

std::pair<ZeroVerdict, ZeroVerdict> metric_rho_relations(const MAStructure& m, const SampleOptions& opts) {
  ExprMatrix g = lr_metric(m);
  ExprMatrix r = rho(m, opts);
  return {is_zero(commutator(g, r), opts), is_zero(anticommutator(g, r), opts)};
}

}  // namespace mage
