#include "mage/acceptance.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "mage/algebra.hpp"
#include "mage/commands.hpp"
#include "mage/courant.hpp"
#include "mage/errors.hpp"
#include "mage/fluids.hpp"
#include "mage/gen_geom.hpp"
#include "mage/ma_core.hpp"

namespace mage {

namespace {

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int range = 9, int max_den = 6) {
    Rational r(integer(-range, range), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(int range = 9, int max_den = 6) {
    Rational r = 0;
    while (r == 0) r = rational(range, max_den);
    return r;
  }

  /// A few random monomials of total degree <= max_degree in the given symbols.
  Expr polynomial(std::initializer_list<Symbol> symbols, int max_degree, int terms = 4) {
    Expr out;
    for (int t = 0; t < terms; ++t) {
      Expr m(rational(5, 3));
      int budget = integer(0, max_degree);
      for (Symbol s : symbols) {
        int d = integer(0, budget);
        budget -= d;
        m *= pow(Expr::symbol(s), d);
      }
      out += m;
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

ExprMatrix I8() { return ExprMatrix::identity(8); }

MAStructure stream(long dP) { return stream_structure(PressureData::from(Expr(dP))); }

// Collects failures; the first few are kept for the detail line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool passed() const { return failures_ == 0; }
  std::string detail() const {
    std::string s = std::to_string(checks_ - failures_) + "/" + std::to_string(checks_) + " checks";
    if (!notes_.empty()) s += "; failed: " + notes_;
    return s;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string notes_;
};

// --- 1 -----------------------------------------------------------------------

CriterionResult pfaffian_equivalence(const SampleOptions& opts) {
  Random rnd(opts.seed + 1);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    Expr A(rnd.rational()), B(rnd.rational()), C(rnd.rational()), D(rnd.rational()), E(rnd.rational());
    MAStructure m{A, B, C, D, E};
    t.check(pfaffian_by_wedge(m) == -B * B + A * C - D * E, "random set " + std::to_string(i));
  }
  t.check(pfaffian_by_wedge(laplace_structure()).str() == "1", "Laplace Pf = 1");
  t.check(pfaffian_by_wedge(von_karman_structure()).str() == "p", "von Karman Pf = p");
  return {1, "Pfaffian equivalence", t.passed(), t.detail()};
}

// --- 2 -----------------------------------------------------------------------

CriterionResult rho_square(const SampleOptions& opts) {
  Random rnd(opts.seed + 2);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    // Choose Pf = +-k^2 and solve for A.
    Rational k = rnd.nonzero_rational(5, 4);
    Rational pf = (i % 2 ? -1 : 1) * k * k;
    Rational B = rnd.rational(), C = rnd.nonzero_rational(), D = rnd.rational(), E = rnd.rational();
    Rational A = (pf + B * B + D * E) / C;
    MAStructure m{Expr(A), Expr(B), Expr(C), Expr(D), Expr(E)};
    ZeroVerdict v = rho_square_law(m, opts);
    t.check(v.kind == ZeroVerdict::Kind::ProvenZero, "square Pf " + to_string(pf) + ": " + describe(v));
  }
  for (int i = 0; i < 20; ++i) {
    // Pf = c (non-square) or c + x^2 + y^2 with constant sign on the box.
    Rational c = rnd.integer(0, 1) ? Rational(2 + 4 * rnd.integer(0, 3)) : Rational(-3 - 4 * rnd.integer(0, 3));
    Expr pf(c);
    if (i % 2) pf = c > 0 ? pf + kX * kX + kY * kY : pf - kX * kX - kP * kP;
    Rational B = rnd.rational(), D = rnd.rational(), E = rnd.rational();
    Expr A = (pf + Expr(B * B + D * E));
    MAStructure m{A, Expr(B), Expr(1), Expr(D), Expr(E)};
    ZeroVerdict v = rho_square_law(m, opts);
    t.check(v.zero(), "Pf = " + pf.str() + ": " + describe(v));
  }
  return {2, "rho-square law", t.passed(), t.detail()};
}

// --- 3 -----------------------------------------------------------------------

CriterionResult pullback_fidelity(const SampleOptions& opts) {
  Random rnd(opts.seed + 3);
  Tally t;
  for (int i = 0; i < 25; ++i) {
    Expr f = rnd.polynomial({Symbol::X, Symbol::Y}, 4);
    MAStructure m;
    for (Expr* c : {&m.A, &m.B, &m.C, &m.D, &m.E}) *c = rnd.polynomial({Symbol::X, Symbol::Y, Symbol::P, Symbol::Q}, 2, 3);
    Expr fx = differentiate(f, Symbol::X), fy = differentiate(f, Symbol::Y);
    Expr fxx = differentiate(fx, Symbol::X), fxy = differentiate(fx, Symbol::Y), fyy = differentiate(fy, Symbol::Y);
    Substitution graph{std::nullopt, std::nullopt, fx, fy};
    auto on = [&](const Expr& e) { return substitute(e, graph); };
    Expr integrand = on(m.A) * fxx + Expr(2) * on(m.B) * fxy + on(m.C) * fyy + on(m.D) * (fxx * fyy - fxy * fxy) + on(m.E);
    t.check(pde_residual(m, StreamFunction(f)) == integrand, "f = " + f.str());
  }
  return {3, "pullback fidelity", t.passed(), t.detail()};
}

// --- 4 -----------------------------------------------------------------------

CriterionResult integrability_dichotomy(const SampleOptions& opts) {
  Tally t;
  for (long dp : {2L, -2L, 7L}) {
    ZeroVerdict v = integrability(stream(dp), opts);
    t.check(v.zero(), "dP = " + std::to_string(dp) + ": " + describe(v));
  }
  for (const char* text : {"2 + x^2", "2 + y^4"}) {
    ZeroVerdict v = integrability(stream_structure(PressureData::from(parse(text), opts)), opts);
    t.check(v.kind == ZeroVerdict::Kind::NumericNonzero, std::string("dP = ") + text + ": " + describe(v));
  }
  return {4, "stream-structure integrability dichotomy", t.passed(), t.detail()};
}

// --- 5 -----------------------------------------------------------------------

CriterionResult classifications(const SampleOptions& opts) {
  Tally t;
  const ExprMatrix eta = eta_expr();
  auto holds = [&](const ExprMatrix& m, int g1, int g2) {
    return is_zero(m * m - Expr(g1) * I8(), opts).zero() &&
           is_zero(m.transpose() * eta * m - Expr(g2) * eta, opts).zero();
  };
  Triple plus = make_triple({1, 1, 1}, stream(2), opts);
  Triple minus = make_triple({-1, 1, 1}, stream(2), opts);
  ExprMatrix flip = ExprMatrix::identity(8);
  for (std::size_t i = 4; i < 8; ++i) flip(i, i) = Expr(-1);
  const std::array<std::pair<ExprMatrix, GenName>, 4> samples{{
      {I8(), GenName::GaP},
      {flip, GenName::GaPC},
      {plus.J[2].matrix, GenName::GaC},
      {minus.J[0].matrix, GenName::GaAC},
  }};
  for (const auto& [m, want] : samples) {
    int realized = 0;
    for (int g1 : {1, -1})
      for (int g2 : {1, -1})
        if (holds(m, g1, g2)) {
          ++realized;
          t.check(gen_name_for(g1, g2) == want, "type " + std::string(gen_name(want)));
        }
    t.check(realized == 1, "exclusive type for " + std::string(gen_name(want)));
  }
  for (const EpsilonTriple& e : all_epsilon_triples()) {
    Triple tr = make_triple(e, stream(2), opts);
    const std::array<GenName, 3> want{e.e1 == 1 ? GenName::GaC : GenName::GaAC,
                                      e.e2 == 1 ? GenName::GaC : GenName::GaPC,
                                      e.e3 == 1 ? GenName::GaC : GenName::GaPC};
    for (int i = 0; i < 3; ++i) {
      GenType g = classify_generalized(tr.J[i], opts);
      t.check(g.name == want[i] && g.exact, "triple " + e.str() + " J" + std::to_string(i + 1));
    }
  }
  return {5, "generalized structure classification", t.passed(), t.detail()};
}

// --- 6 -----------------------------------------------------------------------

CriterionResult anticommutation(const SampleOptions& opts) {
  Tally t;
  const ExprMatrix J2x2{{0, -1}, {1, 0}}, Z2(2, 2), I2 = ExprMatrix::identity(2), Z4(4, 4);
  const ExprMatrix rho_b = ExprMatrix::from_blocks(Z2, J2x2, J2x2, Z2);
  const ExprMatrix alpha_b = ExprMatrix::from_blocks(J2x2, Z2, Z2, -J2x2);
  const ExprMatrix omega_b = ExprMatrix::from_blocks(Z2, I2, -I2, Z2);
  for (const EpsilonTriple& e : all_epsilon_triples()) {
    Triple tr = make_triple(e, stream(2), opts);
    std::array<ExprMatrix, 3> value;
    bool vanish = true;
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (int k = 0; k < 3; ++k) {
      value[k] = anticommutator(tr.J[pairs[k].first].matrix, tr.J[pairs[k].second].matrix);
      vanish = vanish && is_zero(value[k], opts).zero();
    }
    bool expected = (e.e1 == 1 && e.e2 == 1 && e.e3 == 1) || (e.e1 == 1 && e.e2 == -1 && e.e3 == -1);
    t.check(vanish == expected, "vanishing for " + e.str());
    Expr e1(e.e1), e2(e.e2), e3(e.e3);
    t.check(value[0] == ExprMatrix::from_blocks(Z4, -(e1 - 1) * omega_b, e2 * (e1 - 1) * omega_b, Z4),
            "{J1,J2} closed form " + e.str());
    t.check(value[1] == ExprMatrix::from_blocks(Z4, -(1 - e1) * alpha_b, e3 * (1 - e1) * alpha_b, Z4),
            "{J1,J3} closed form " + e.str());
    t.check(value[2] == ExprMatrix::from_blocks(-(e2 - e3) * rho_b, Z4, Z4, (e2 - e3) * rho_b),
            "{J2,J3} closed form " + e.str());
  }
  return {6, "anticommutation law", t.passed(), t.detail()};
}

// --- 7 -----------------------------------------------------------------------

CriterionResult hyper_identities(const SampleOptions& opts) {
  Tally t;
  for (auto [e, sign] : {std::pair{EpsilonTriple{1, 1, 1}, -1}, std::pair{EpsilonTriple{1, -1, -1}, 1}}) {
    Triple tr = make_triple(e, stream(2), opts);
    const auto& J = tr.J;
    t.check(J[0].matrix * J[1].matrix * J[2].matrix == Expr(sign) * I8(),
            "J1J2J3 = " + std::string(sign > 0 ? "+" : "-") + "Id for " + e.str());
    for (int i = 0; i < 3; ++i) {
      int a = i, b = (i + 1) % 3, c = (i + 2) % 3;
      t.check(J[a].matrix * J[b].matrix == J[c].matrix,
              "J" + std::to_string(a + 1) + "J" + std::to_string(b + 1) + " = J" + std::to_string(c + 1) +
                  " for " + e.str());
    }
  }
  return {7, "hyper identities", t.passed(), t.detail()};
}

// --- 8 -----------------------------------------------------------------------

CriterionResult quadrics(const SampleOptions& opts) {
  Random rnd(opts.seed + 8);
  Tally t;
  for (EpsilonTriple e : {EpsilonTriple{1, 1, 1}, EpsilonTriple{1, -1, -1}}) {
    Triple tr = make_triple(e, stream(2), opts);
    auto run = [&](Rational a1, Rational a2, Rational a3, const std::string& tag) {
      Rational s = a1 * a1 + e.e2 * a2 * a2 + e.e3 * a3 * a3;
      ExprMatrix A = Expr(a1) * tr.J[0].matrix + Expr(a2) * tr.J[1].matrix + Expr(a3) * tr.J[2].matrix;
      t.check(A * A == Expr(-s) * I8(), "A^2 law " + tag + " " + e.str());
      ComboResult c = combo_classify(a1, a2, a3, tr, opts);
      if (s == 1)
        t.check(c.type && c.type->name == GenName::GaC, "s = 1 classifies GaC " + tag);
      else if (s == -1)
        t.check(c.type && c.type->name == GenName::GaPC, "s = -1 classifies GaPC " + tag);
      else
        t.check(!c.type, "off the quadric is not a structure " + tag);
    };
    for (int i = 0; i < 50; ++i) run(rnd.rational(), rnd.rational(), rnd.rational(), "random");
    // Rational points on the quadrics: a rotation in the (a2, a3) plane
    // applied to a rational point on a conic.
    for (int i = 0; i < 10; ++i) {
      Rational u = rnd.rational(4, 5), v = rnd.rational(4, 5), w = rnd.rational(4, 5);
      Rational cw = (1 - w * w) / (1 + w * w), sw = 2 * w / (1 + w * w);
      if (e.e2 == 1) {
        Rational n = 1 + u * u + v * v;
        run((1 - u * u - v * v) / n, 2 * u / n, 2 * v / n, "sphere");
      } else {
        if (u * u == 1) u = 0;
        Rational d = 1 - u * u;
        Rational r = (1 + u * u) / d, l = 2 * u / d;  // r^2 - l^2 = 1
        run(r, l * cw, l * sw, "hyperboloid s=1");
        run(l, r * cw, r * sw, "hyperboloid s=-1");
      }
    }
  }
  return {8, "sphere and hyperboloid law", t.passed(), t.detail()};
}

// --- 9 -----------------------------------------------------------------------

CriterionResult kahler_chiral(const SampleOptions& opts) {
  Tally t;
  for (long dp : {2L, -2L}) {
    MAStructure m = stream(dp);
    GenEndo G = generalized_metric(m, opts);
    GenEndo J = metric_partner(m, opts);
    ZeroVerdict comm = is_zero(commutator(G.matrix, J.matrix), opts);
    t.check(comm.kind == ZeroVerdict::Kind::ProvenZero, "[G,J] = 0 at dP = " + std::to_string(dp));
    GenType type = classify_generalized(J, opts);
    GenName want = dp > 0 ? GenName::GaC : GenName::GaP;
    t.check(type.name == want, "J is " + std::string(gen_name(want)) + " at dP = " + std::to_string(dp) + " (got " +
                                   std::string(gen_name(type.name)) + ")");
  }
  return {9, "Kahler and chiral compatibility", t.passed(), t.detail()};
}

// --- 10 ----------------------------------------------------------------------

GenSection random_section(Random& rnd) {
  GenSection s;
  for (auto& c : s.X.components) c = rnd.polynomial({Symbol::X, Symbol::Y, Symbol::P, Symbol::Q}, 2, 2);
  for (int k = 0; k < 4; ++k)
    s.xi.add(static_cast<FormMask>(1U << k), rnd.polynomial({Symbol::X, Symbol::Y, Symbol::P, Symbol::Q}, 2, 2));
  return s;
}

CriterionResult courant_nijenhuis(const SampleOptions& opts) {
  Random rnd(opts.seed + 10);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    GenSection a = random_section(rnd), b = random_section(rnd);
    t.check((courant_bracket(a, b) + courant_bracket(b, a)).is_zero_structural(), "antisymmetry pair " + std::to_string(i));
  }
  Triple tr = make_triple({1, 1, 1}, stream(2), opts);
  for (const GenEndo& J : tr.J) {
    IntegrabilityReport r = integrability_check(J, opts);
    t.check(r.integrable && r.verdict.exact(), J.label + " integrable at dP = 2");
    t.check(r.tensoriality.zero(), J.label + " tensoriality");
  }
  Triple var = make_triple({1, 1, 1}, stream_structure(PressureData::from(parse("2 + x^2"), opts)), opts);
  IntegrabilityReport r = integrability_check(var.J[0], opts);
  t.check(!r.integrable && r.witness.has_value(), "dP = 2 + x^2 diagonal structure has a witness");
  t.check(r.tensoriality.zero(), "tensoriality at dP = 2 + x^2");
  return {10, "Courant bracket and Nijenhuis tensor", t.passed(), t.detail()};
}

// --- 11 ----------------------------------------------------------------------

// Brute-force span of all words of length <= 4 in the generators.
std::size_t word_span_dimension(const std::vector<RatMatrix>& gens) {
  std::vector<RatMatrix> words{RatMatrix::identity(8)}, frontier = words;
  for (int len = 1; len <= 4; ++len) {
    std::vector<RatMatrix> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) next.push_back(w * g);
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  RatMatrix stacked(words.size(), 64);
  for (std::size_t r = 0; r < words.size(); ++r)
    for (std::size_t c = 0; c < 64; ++c) stacked(r, c) = words[r].data()[c];
  return rank(stacked);
}

std::vector<Rational> unit(std::size_t k, int s = 1) {
  std::vector<Rational> v(4, Rational(0));
  v[k] = s;
  return v;
}

CriterionResult closure(const SampleOptions& opts) {
  Tally t;
  // Expected squares of J1, J2, J3 and signs of J1J2, J2J3, J3J1 against J3, J1, J2.
  struct Expected {
    EpsilonTriple eps;
    std::array<int, 3> squares;
    std::array<int, 3> cyclic;
  };
  for (const Expected& x : {Expected{{1, 1, 1}, {-1, -1, -1}, {1, 1, 1}}, Expected{{1, -1, -1}, {-1, 1, 1}, {1, -1, 1}}}) {
    Triple tr = make_triple(x.eps, stream(2), opts);
    MatAlgebra a = close_algebra({tr.J[0], tr.J[1], tr.J[2]});
    std::vector<RatMatrix> gens;
    for (const auto& J : tr.J) gens.push_back(*to_rational(J.matrix));
    t.check(a.dim() == 4, "dimension 4 for " + x.eps.str());
    t.check(a.dim() == word_span_dimension(gens), "closure oracle agrees for " + x.eps.str());
    if (a.dim() != 4) continue;
    for (const auto& b : a.basis) {
      std::vector<RatMatrix> with_b = gens;
      with_b.push_back(b);
      t.check(word_span_dimension(with_b) == 4, "basis element inside the word span");
    }
    for (std::size_t i = 1; i <= 3; ++i) t.check(a.constants[i][i] == unit(0, x.squares[i - 1]), "square of J" + std::to_string(i));
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t p = i + 1, q = (i + 1) % 3 + 1, r = (i + 2) % 3 + 1;
      t.check(a.constants[p][q] == unit(r, x.cyclic[i]), "product J" + std::to_string(p) + "J" + std::to_string(q));
    }
  }
  return {11, "algebra closure", t.passed(), t.detail()};
}

// --- 12 ----------------------------------------------------------------------

CriterionResult lie_jordan(const SampleOptions& opts) {
  Tally t;
  for (EpsilonTriple e : {EpsilonTriple{1, 1, 1}, EpsilonTriple{1, -1, -1}}) {
    Triple tr = make_triple(e, stream(2), opts);
    MatAlgebra a = close_algebra({tr.J[0], tr.J[1], tr.J[2]});
    IdentityCheck good = verify_lie_jordan(a, Rational(-1, 4));
    t.check(good.holds && good.checked == 64, "q^2 = -1/4 holds for " + e.str());
    IdentityCheck bad = verify_lie_jordan(a, Rational(1, 4));
    bool witnessed = false;
    if (!bad.holds && bad.witness) {
      auto [i, j, k] = *bad.witness;
      const auto &A = a.basis[i], &B = a.basis[j], &C = a.basis[k];
      RatMatrix lhs = Rational(1, 4) * commutator(commutator(A, C), B);
      RatMatrix AB = Rational(1, 2) * anticommutator(A, B), BC = Rational(1, 2) * anticommutator(B, C);
      witnessed = !(lhs == Rational(1, 2) * anticommutator(AB, C) - Rational(1, 2) * anticommutator(A, BC));
    }
    t.check(witnessed, "q^2 = +1/4 fails with a witness for " + e.str());
  }
  return {12, "Lie-Jordan axiom", t.passed(), t.detail()};
}

// --- 13 ----------------------------------------------------------------------

CriterionResult fluids_chain(const SampleOptions& opts) {
  Random rnd(opts.seed + 13);
  Tally t;
  for (int i = 0; i < 10; ++i) {
    // Quadratic part with nonzero Hessian determinant, plus optional higher terms.
    Rational a = rnd.rational(), b = rnd.rational(), c = rnd.rational();
    while (4 * a * c - b * b == 0) c = rnd.rational();
    Expr quadratic = Expr(a) * kX * kX + Expr(b) * kX * kY + Expr(c) * kY * kY + rnd.polynomial({Symbol::X, Symbol::Y}, 1, 2);
    for (bool higher : {false, true}) {
      Expr fe = higher ? quadratic + rnd.polynomial({Symbol::X, Symbol::Y}, 4, 3) : quadratic;
      StreamFunction f(fe);
      VelocityField v = VelocityField::from_stream(f);
      Expr fxx = differentiate(differentiate(fe, Symbol::X), Symbol::X);
      Expr fxy = differentiate(differentiate(fe, Symbol::X), Symbol::Y);
      Expr fyy = differentiate(differentiate(fe, Symbol::Y), Symbol::Y);
      Expr det = fxx * fyy - fxy * fxy;
      std::string tag = "f = " + fe.str();
      t.check(divergence(v).is_zero_structural(), "divergence free, " + tag);
      t.check(pressure_rhs(v, opts) == Expr(2) * det, "pressure rhs, " + tag);
      t.check(laplacian_divergence_identity(v, opts).kind == ZeroVerdict::Kind::ProvenZero, "div Laplacian v, " + tag);
      if (!higher) {
        PressureData dp = PressureData::from(Expr(2) * det, opts);
        t.check(is_zero(stream_residual(f, dp), opts).zero(), "stream residual, " + tag);
      }
    }
  }
  return {13, "fluids chain", t.passed(), t.detail()};
}

// --- 14 ----------------------------------------------------------------------

CriterionResult determinism(const SampleOptions& opts) {
  Tally t;
  RunConfig cfg;
  cfg.seed = opts.seed;
  cfg.tolerance = opts.tolerance;
  cfg.box = opts.half_width;
  cfg.structure = {{"A", "p"}, {"C", "1"}, {"E", "x*y"}};
  cfg.velocity_a = "y";
  cfg.velocity_b = "-x";
  cfg.stream = "(x^2 + y^2)/2";
  cfg.generalized_dP = "2";
  cfg.combo = {"3/5", "4/5", "0"};
  const std::array<std::pair<const char*, Report (*)(const RunConfig&)>, 4> commands{{
      {"classify", cmd_classify},
      {"generalized", cmd_generalized},
      {"fluids", cmd_fluids},
      {"algebra", cmd_algebra},
  }};
  for (const auto& [name, cmd] : commands) {
    std::string first = cmd(cfg).structured(), second = cmd(cfg).structured();
    t.check(first == second, std::string(name) + " report is byte-identical");
    t.check(Report::parse(first).structured() == first, std::string(name) + " report round-trips");
  }
  return {14, "determinism", t.passed(), t.detail()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SampleOptions& opts) {
  const std::array<std::pair<CriterionResult (*)(const SampleOptions&), const char*>, 14> checks{{
      {pfaffian_equivalence, "Pfaffian equivalence"},
      {rho_square, "rho-square law"},
      {pullback_fidelity, "pullback fidelity"},
      {integrability_dichotomy, "stream-structure integrability dichotomy"},
      {classifications, "generalized structure classification"},
      {anticommutation, "anticommutation law"},
      {hyper_identities, "hyper identities"},
      {quadrics, "sphere and hyperboloid law"},
      {kahler_chiral, "Kahler and chiral compatibility"},
      {courant_nijenhuis, "Courant bracket and Nijenhuis tensor"},
      {closure, "algebra closure"},
      {lie_jordan, "Lie-Jordan axiom"},
      {fluids_chain, "fluids chain"},
      {determinism, "determinism"},
  }};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      out.push_back(checks[i].first(opts));
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(i + 1), checks[i].second, false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

Report acceptance_report(const std::vector<CriterionResult>& results, const SampleOptions& opts) {
  Report r;
  r.set("command", "selftest");
  Report& run = r.section("run");
  run.set("seed", std::to_string(opts.seed));
  std::ostringstream tol, box;
  tol << opts.tolerance;
  box << opts.half_width;
  run.set("tolerance", tol.str());
  run.set("box", box.str());
  int passed = 0;
  Report& crit = r.section("criteria");
  for (const auto& c : results) {
    Report& s = crit.section("c" + std::to_string(c.id));
    s.set("title", c.title);
    s.set("result", c.passed ? "PASS" : "FAIL");
    s.set("detail", c.detail);
    passed += c.passed;
  }
  r.set("summary", std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed");
  return r;
}

}  // namespace mage
