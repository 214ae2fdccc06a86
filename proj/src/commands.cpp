#include "mage/commands.hpp"

#include <optional>
#include <sstream>

#include "mage/algebra.hpp"
#include "mage/courant.hpp"
#include "mage/errors.hpp"
#include "mage/fluids.hpp"
#include "mage/gen_geom.hpp"
#include "mage/ma_core.hpp"

namespace mage {

namespace {

std::string number(double d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

Report header(const std::string& command, const RunConfig& cfg) {
  Report r;
  r.set("command", command);
  Report& run = r.section("run");
  run.set("seed", std::to_string(cfg.seed));
  run.set("tolerance", number(cfg.tolerance));
  run.set("box", number(cfg.box));
  return r;
}

Expr parse_field(const std::string& name, const std::string& text) {
  if (text.empty()) throw ParseError(name + " is empty");
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(name + ": " + e.what(), e.offset());
  }
}

Rational parse_rational(const std::string& name, const std::string& text) {
  auto c = parse_field(name, text).constant();
  if (!c) throw ParseError(name + " must be a rational constant, got '" + text + "'");
  return *c;
}

std::string evidence(bool exact) { return exact ? "exact" : "sampled"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void put_structure(Report& r, const MAStructure& m) {
  r.set("A", m.A.str());
  r.set("B", m.B.str());
  r.set("C", m.C.str());
  r.set("D", m.D.str());
  r.set("E", m.E.str());
}

void put_type(Report& r, const GenType& t) {
  r.set("type", std::string(gen_name(t.name)));
  r.set("gamma1", std::to_string(t.gamma1));
  r.set("gamma2", std::to_string(t.gamma2));
  r.set("isotropic", yes_no(t.isotropic));
  r.set("evidence", evidence(t.exact));
}

std::string signed_unit(int s, const std::string& what) {
  if (s == 0) return "neither +" + what + " nor -" + what;
  return (s > 0 ? "+" : "-") + what;
}

Table labeled_table(const MatAlgebra& a, const ProductTable& t) {
  Table out;
  std::vector<std::string> head{""};
  head.insert(head.end(), a.labels.begin(), a.labels.end());
  out.push_back(head);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::vector<std::string> row{a.labels[i]};
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(describe_element(a, t[i][j]));
    out.push_back(std::move(row));
  }
  return out;
}

std::string describe(const MatAlgebra& a, const IdentityCheck& c) {
  std::string s = (c.holds ? "holds on " : "fails on ") + std::to_string(c.checked) + " checks";
  if (c.witness) {
    auto [i, j, k] = *c.witness;
    s += ", witness (" + a.labels[i] + ", " + a.labels[j] + ", " + a.labels[k] + ")";
  }
  return s;
}

PressureData generalized_pressure(const RunConfig& cfg) {
  return PressureData::from(parse_field("dP", cfg.generalized_dP), cfg.sample_options());
}

}  // namespace

Report cmd_classify(const RunConfig& cfg) {
  if (cfg.structure.empty()) throw ParseError("[structure] needs at least one of the coefficients A..E");
  SampleOptions opts = cfg.sample_options();
  auto coef = [&](const std::string& k) {
    auto it = cfg.structure.find(k);
    return it == cfg.structure.end() ? Expr(0) : parse_field(k, it->second);
  };
  MAStructure m{coef("A"), coef("B"), coef("C"), coef("D"), coef("E")};

  Report r = header("classify", cfg);
  put_structure(r.section("structure"), m);
  MAClass c = classify(m, opts);
  r.set("pfaffian", c.pfaffian.str());
  r.set("pfaffian.wedge", yes_no(is_zero(pfaffian_by_wedge(m) - c.pfaffian, opts).zero()));
  r.set("class", std::string(type_name(c.type)));
  r.set("class.evidence", evidence(c.exact));
  if (c.type == MAType::Degenerate) throw DomainError("degenerate structure: Pf(alpha) = 0");

  if (c.sign() == 0) {
    r.set("normalization", "undefined (Pf changes sign on the sample box)");
    r.set("rho", "undefined");
    r.set("integrability", "undefined");
  } else {
    put_structure(r.section("normalization"), normalize(m, opts));
    r.set("rho", to_strings(rho(m, opts)));
    r.set("rho.square_law", describe(rho_square_law(m, opts)));
    ZeroVerdict integ = integrability(m, opts);
    r.set("integrability", describe(integ));
    r.set("integrable", yes_no(integ.zero()));
  }
  ExprMatrix g = lr_metric(m);
  r.set("g", to_strings(g));
  if (auto sig = signature(g, opts))
    r.set("g.signature", "(" + std::to_string(sig->first) + ", " + std::to_string(sig->second) + ")");
  else
    r.set("g.signature", "undefined (degenerate or varying on the box)");
  r.set("hitchin_pair", describe(hitchin_pair_check(m, opts)));
  return r;
}

Report cmd_generalized(const RunConfig& cfg) {
  SampleOptions opts = cfg.sample_options();
  PressureData dp = generalized_pressure(cfg);
  EpsilonTriple eps{cfg.eps[0], cfg.eps[1], cfg.eps[2]};
  MAStructure m = stream_structure(dp);
  Triple t = make_triple(eps, m, opts);

  Report r = header("generalized", cfg);
  r.set("dP", dp.laplacian.str());
  r.set("eps", eps.str());
  r.set("pfaffian", pfaffian(m).str());

  std::array<std::optional<GenType>, 3> types;
  Report& table = r.section("classification");
  for (int i = 0; i < 3; ++i) {
    Report& s = table.section(t.J[i].label);
    try {
      types[i] = classify_generalized(t.J[i], opts);
      put_type(s, *types[i]);
    } catch (const DomainError&) {
      s.set("type", "not a generalized almost structure");
    }
  }
  const bool all_structures = types[0] && types[1] && types[2];

  AnticommutatorReport ac = anticommutator_report(t, opts);
  Report& anti = r.section("anticommutators");
  const char* names[] = {"J1J2", "J1J3", "J2J3"};
  for (int k = 0; k < 3; ++k) {
    anti.set(names[k], describe(ac.verdicts[k]));
    if (!ac.verdicts[k].zero()) anti.set(std::string(names[k]) + ".value", to_strings(ac.values[k]));
  }
  anti.set("all_vanish", yes_no(ac.all_vanish));

  Report& prod = r.section("products");
  if (ac.all_vanish) {
    ProductReport p = product_identities(t, opts);
    prod.set("J1J2J3", signed_unit(p.triple_product_sign, "Id"));
    for (int i = 0; i < 3; ++i)
      prod.set("J" + std::to_string(i + 1) + "J" + std::to_string((i + 1) % 3 + 1),
               signed_unit(p.cyclic_signs[i], "J" + std::to_string((i + 2) % 3 + 1)));
    prod.set("cyclic_law", p.cyclic_law ? "holds" : "fails");
    prod.set("hyper_type", p.hyper_type);
  } else {
    prod.set("status", "skipped: identities apply to anticommuting triples");
  }

  Report& combo = r.section("combination");
  Rational a1 = parse_rational("a1", cfg.combo[0]), a2 = parse_rational("a2", cfg.combo[1]),
           a3 = parse_rational("a3", cfg.combo[2]);
  combo.set("a", "(" + to_string(a1) + ", " + to_string(a2) + ", " + to_string(a3) + ")");
  if (all_structures) {
    ComboResult cr = combo_classify(a1, a2, a3, t, opts);
    combo.set("s", to_string(cr.s));
    if (cr.type)
      put_type(combo, *cr.type);
    else
      combo.set("type", "not a generalized almost structure");
  } else {
    combo.set("status", "skipped: the triple contains a non-structure");
  }

  Report& metric = r.section("metric");
  GenEndo G = generalized_metric(m, opts);
  GenEndo J = metric_partner(m, opts);
  CompatibilityReport cp = compatibility(G, J, opts);
  metric.set("construction", std::string(compatibility_name(dp.sign > 0 ? Compatibility::Kahler : Compatibility::Chiral)));
  metric.set("commutator", describe(cp.commutator));
  metric.set("partner_type", cp.partner_type ? std::string(gen_name(cp.partner_type->name)) : "none");
  metric.set("verdict", std::string(compatibility_name(cp.result)));
  auto [comm, anticomm] = metric_rho_relations(m, opts);
  metric.set("g_rho_commutator", describe(comm));
  metric.set("g_rho_anticommutator", describe(anticomm));

  Report& integ = r.section("integrability");
  for (int i = 0; i < 3; ++i) {
    Report& s = integ.section(t.J[i].label);
    if (!types[i] || !types[i]->isotropic) {
      s.set("status", types[i] ? "skipped: not isotropic" : "skipped: not a generalized almost structure");
      continue;
    }
    IsotropyReport iso = isotropy_check(t.J[i], opts);
    s.set("isotropy", iso.numeric ? "rank 4 eigenbundles, isotropic" : "not isotropic");
    IntegrabilityReport ir = integrability_check(t.J[i], opts);
    s.set("nijenhuis", describe(ir.verdict));
    s.set("integrable", yes_no(ir.integrable));
    if (ir.witness) s.set("witness", "(e" + std::to_string(ir.witness->first) + ", e" + std::to_string(ir.witness->second) + ")");
    s.set("tensoriality", describe(ir.tensoriality));
  }
  return r;
}

Report cmd_fluids(const RunConfig& cfg) {
  SampleOptions opts = cfg.sample_options();
  Report r = header("fluids", cfg);
  Expr dP;
  if (cfg.velocity_a || cfg.velocity_b) {
    if (!cfg.velocity_a || !cfg.velocity_b) throw ParseError("[fluids] needs both a and b");
    VelocityField v(parse_field("a", *cfg.velocity_a), parse_field("b", *cfg.velocity_b));
    r.set("velocity", "(" + v.a.str() + ", " + v.b.str() + ")");
    r.set("divergence", divergence(v).str());
    dP = pressure_rhs(v, opts);
    r.set("laplacian_divergence", describe(laplacian_divergence_identity(v, opts)));
  } else if (cfg.fluid_dP) {
    dP = parse_field("dP", *cfg.fluid_dP);
  } else {
    throw ParseError("[fluids] needs a velocity pair (a, b) or dP");
  }
  r.set("dP", dP.str());
  PressureData pd = PressureData::from(dP, opts);
  r.set("dP.sign", pd.sign > 0 ? "positive" : pd.sign < 0 ? "negative" : "changes sign");
  r.set("dP.evidence", evidence(pd.exact));
  if (pd.sign == 0) {
    r.set("stream_structure", "undefined (dP changes sign on the sample box)");
    return r;
  }
  MAStructure m = stream_structure(pd);
  put_structure(r.section("stream_structure"), m);
  r.set("pfaffian", pfaffian(m).str());
  ZeroVerdict integ = integrability(m, opts);
  r.set("integrability", describe(integ));
  r.set("integrable", yes_no(integ.zero()));
  if (cfg.stream) {
    StreamFunction f(parse_field("f", *cfg.stream));
    r.set("f", f.expr().str());
    r.set("hessian_determinant", hessian_determinant(f).str());
    Expr res = stream_residual(f, pd);
    r.set("residual", res.str());
    r.set("residual.verdict", describe(is_zero(res, opts)));
  }
  return r;
}

Report cmd_algebra(const RunConfig& cfg) {
  SampleOptions opts = cfg.sample_options();
  Expr dPexpr = parse_field("dP", cfg.generalized_dP);
  if (!dPexpr.constant()) throw DomainError("algebra requires a constant dP, got " + dPexpr.str());
  PressureData dp = PressureData::from(dPexpr, opts);
  EpsilonTriple eps{cfg.eps[0], cfg.eps[1], cfg.eps[2]};
  Triple t = make_triple(eps, stream_structure(dp), opts);
  product_identities(t, opts);

  MatAlgebra a = close_algebra({t.J[0], t.J[1], t.J[2]});
  Report r = header("algebra", cfg);
  r.set("dP", dp.laplacian.str());
  r.set("eps", eps.str());
  r.set("dimension", std::to_string(a.dim()));
  std::string basis;
  for (const auto& l : a.labels) basis += (basis.empty() ? "" : ", ") + l;
  r.set("basis", basis);
  Report& tables = r.section("tables");
  for (ProductKind k : {ProductKind::Associative, ProductKind::Lie, ProductKind::Jordan}) {
    ProductTable pt = k == ProductKind::Associative ? a.constants : product_table(a, k);
    tables.set(std::string(product_name(k)), labeled_table(a, pt));
  }
  Report& ids = r.section("identities");
  ids.set("leibniz", describe(a, verify_leibniz(a)));
  ids.set("jordan_leibniz", describe(a, verify_jordan_leibniz(a)));
  ids.set("jordan", describe(a, verify_jordan_identity(a, cfg.seed)));
  Report& lj = ids.section("lie_jordan");
  lj.set("q2_minus_quarter", describe(a, verify_lie_jordan(a, Rational(-1, 4))));
  lj.set("q2_plus_quarter", describe(a, verify_lie_jordan(a, Rational(1, 4))));
  return r;
}

}  // namespace mage
