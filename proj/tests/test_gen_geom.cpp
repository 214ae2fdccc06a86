#include <doctest.h>

#include <random>

#include "mage/errors.hpp"
#include "mage/fluids.hpp"
#include "mage/gen_geom.hpp"

using namespace mage;

namespace {

MAStructure stream(long dP) { return stream_structure(PressureData::from(Expr(dP))); }

const ExprMatrix kA{{0, -1}, {1, 0}};
const ExprMatrix kZ2(2, 2);
const ExprMatrix kI2 = ExprMatrix::identity(2);

ExprMatrix blocks(const ExprMatrix& a, const ExprMatrix& b, const ExprMatrix& c, const ExprMatrix& d) {
  return ExprMatrix::from_blocks(a, b, c, d);
}

ExprMatrix I8() { return ExprMatrix::identity(8); }

}  // namespace

TEST_CASE("structure type names") {
  CHECK(gen_name_for(1, 1) == GenName::GaP);
  CHECK(gen_name_for(1, -1) == GenName::GaPC);
  CHECK(gen_name_for(-1, 1) == GenName::GaC);
  CHECK(gen_name_for(-1, -1) == GenName::GaAC);
  GenEndo id{I8(), BlockShape::Diagonal, "Id"};
  CHECK(classify_generalized(id).name == GenName::GaP);
  CHECK_FALSE(classify_generalized(id).isotropic);
  GenEndo zero;
  CHECK_THROWS_WITH_AS(classify_generalized(zero), doctest::Contains("not a generalized almost structure"),
                       DomainError);
}

TEST_CASE("triple classification at dP = 2") {
  MAStructure m = stream(2);
  for (const EpsilonTriple& eps : all_epsilon_triples()) {
    Triple t = make_triple(eps, m);
    CAPTURE(eps.str());
    GenType t1 = classify_generalized(t.J[0]);
    GenType t2 = classify_generalized(t.J[1]);
    GenType t3 = classify_generalized(t.J[2]);
    CHECK(t1.name == (eps.e1 == 1 ? GenName::GaC : GenName::GaAC));
    CHECK(t2.name == (eps.e2 == 1 ? GenName::GaC : GenName::GaPC));
    CHECK(t3.name == (eps.e3 == 1 ? GenName::GaC : GenName::GaPC));
    CHECK(t1.isotropic == (eps.e1 == 1));
    CHECK(t2.isotropic);
    CHECK(t3.isotropic);
    CHECK(t1.exact);
    CHECK(t.J[0].matrix * t.J[0].matrix == Expr(-1) * I8());
  }
}

TEST_CASE("triple blocks at dP = 2 match the displayed matrices") {
  Triple t = make_triple({1, 1, 1}, stream(2));
  ExprMatrix rho_blocks = blocks(kZ2, kA, kA, kZ2);
  ExprMatrix alpha_blocks = blocks(kA, kZ2, kZ2, -kA);
  ExprMatrix omega_blocks = blocks(kZ2, kI2, -kI2, kZ2);
  CHECK(t.J[0].matrix.block(0, 0, 4, 4) == rho_blocks);
  CHECK(t.J[0].matrix.block(4, 4, 4, 4) == rho_blocks);
  CHECK(t.J[1].matrix.block(0, 4, 4, 4) == alpha_blocks);
  CHECK(t.J[2].matrix.block(0, 4, 4, 4) == omega_blocks);
  MAStructure unnormalized{Expr(-2), Expr(), Expr(-2), Expr(), Expr()};
  CHECK_THROWS_AS(make_triple({1, 1, 1}, unnormalized), DomainError);
}

TEST_CASE("anticommutators follow the closed forms") {
  ExprMatrix rho_b = blocks(kZ2, kA, kA, kZ2);
  ExprMatrix alpha_b = blocks(kA, kZ2, kZ2, -kA);
  ExprMatrix omega_b = blocks(kZ2, kI2, -kI2, kZ2);
  ExprMatrix Z4(4, 4);
  for (const EpsilonTriple& e : all_epsilon_triples()) {
    CAPTURE(e.str());
    Triple t = make_triple(e, stream(2));
    AnticommutatorReport r = anticommutator_report(t);
    Expr e1(e.e1), e2(e.e2), e3(e.e3);
    ExprMatrix j12 = ExprMatrix::from_blocks(Z4, -(e1 - 1) * omega_b, e2 * (e1 - 1) * omega_b, Z4);
    ExprMatrix j13 = ExprMatrix::from_blocks(Z4, -(1 - e1) * alpha_b, e3 * (1 - e1) * alpha_b, Z4);
    ExprMatrix j23 = ExprMatrix::from_blocks(-(e2 - e3) * rho_b, Z4, Z4, (e2 - e3) * rho_b);
    CHECK(r.values[0] == j12);
    CHECK(r.values[1] == j13);
    CHECK(r.values[2] == j23);
    CHECK(r.all_vanish == (e.e1 == 1 && e.e2 == e.e3));
  }
}

TEST_CASE("product identities") {
  Triple plus = make_triple({1, 1, 1}, stream(2));
  ProductReport p = product_identities(plus);
  CHECK(p.triple_product_sign == -1);
  CHECK(p.cyclic_law);
  CHECK(p.hyper_type == "generalized hyper-complex");
  CHECK(plus.J[0].matrix * plus.J[1].matrix == plus.J[2].matrix);

  Triple split = make_triple({1, -1, -1}, stream(2));
  ProductReport s = product_identities(split);
  CHECK(s.triple_product_sign == 1);
  CHECK(s.hyper_type == "generalized hyper-para-complex");
  // J1 J2 = J3 and J3 J1 = J2 survive; J2 J3 = -J1 since J1 J2 J3 = +Id and J1^2 = -Id.
  CHECK(s.cyclic_signs == std::array<int, 3>{1, -1, 1});
  CHECK_FALSE(s.cyclic_law);

  CHECK_THROWS_WITH_AS(product_identities(make_triple({-1, 1, 1}, stream(2))),
                       doctest::Contains("anticommuting triples"), DomainError);
}

TEST_CASE("linear combinations") {
  Triple plus = make_triple({1, 1, 1}, stream(2));
  Triple split = make_triple({1, -1, -1}, stream(2));
  auto c1 = combo_classify(Rational(3, 5), Rational(4, 5), 0, plus);
  REQUIRE(c1.type);
  CHECK(c1.type->name == GenName::GaC);
  auto c2 = combo_classify(0, 1, 0, split);
  REQUIRE(c2.type);
  CHECK(c2.type->name == GenName::GaPC);
  auto c3 = combo_classify(Rational(5, 4), Rational(3, 4), 0, split);
  CHECK(c3.s == 1);
  REQUIRE(c3.type);
  CHECK(c3.type->name == GenName::GaC);
  auto c4 = combo_classify(1, 1, 0, plus);
  CHECK(c4.s == 2);
  CHECK_FALSE(c4.type);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  ExprMatrix eta = eta_expr();
  for (const Triple* t : {&plus, &split})
    for (int i = 0; i < 10; ++i) {
      Rational a1(num(rng), den(rng)), a2(num(rng), den(rng)), a3(num(rng), den(rng));
      a1.canonicalize();
      a2.canonicalize();
      a3.canonicalize();
      auto c = combo_classify(a1, a2, a3, *t);
      Expr s(c.s);
      CHECK(c.A.matrix * c.A.matrix == -s * I8());
      CHECK(c.A.matrix.transpose() * eta * c.A.matrix == s * eta);
    }
}

TEST_CASE("generalized metric and compatibility") {
  MAStructure p2 = stream(2), m2 = stream(-2);
  GenEndo G = generalized_metric(p2);
  CHECK(G.matrix * G.matrix == I8());
  CHECK(classify_generalized(G).name == GenName::GaP);
  CHECK(G.matrix.transpose() * eta_expr() * G.matrix == eta_expr());
  CHECK_THROWS_WITH_AS(generalized_metric(laplace_structure()), doctest::Contains("g degenerate"), DomainError);

  CompatibilityReport k = compatibility(G, metric_partner(p2));
  CHECK(k.commutator.kind == ZeroVerdict::Kind::ProvenZero);
  CHECK(k.result == Compatibility::Kahler);

  GenEndo Gm = generalized_metric(m2);
  CompatibilityReport c = compatibility(Gm, metric_partner(m2));
  CHECK(c.commutator.kind == ZeroVerdict::Kind::ProvenZero);
  REQUIRE(c.partner_type);
  // The diag(rho, -rho) partner commutes with G but is para-complex.
  CHECK(c.partner_type->name == GenName::GaPC);

  auto [comm_p, anti_p] = metric_rho_relations(p2);
  CHECK(comm_p.zero());
  auto [comm_m, anti_m] = metric_rho_relations(m2);
  CHECK_FALSE(comm_m.zero());
  CHECK(anti_m.zero());

  Triple t = make_triple({1, 1, 1}, p2);
  CHECK_THROWS_AS(compatibility(t.J[2], G), DomainError);
}

TEST_CASE("eta scaling does not change verdicts") {
  Triple t = make_triple({1, -1, 1}, stream(2));
  ExprMatrix half = eta_expr(), full = Expr(2) * eta_expr();
  for (const auto& J : t.J) {
    int g = classify_generalized(J).gamma2;
    CHECK(J.matrix.transpose() * full * J.matrix == Expr(g) * full);
    CHECK(J.matrix.transpose() * half * J.matrix == Expr(g) * half);
  }
}

TEST_CASE("anticommutation at dP = -2") {
  MAStructure m = stream(-2);
  for (const EpsilonTriple& e : all_epsilon_triples()) {
    CAPTURE(e.str());
    Triple t = make_triple(e, m);
    CHECK(t.pf_sign == -1);
    bool vanish = true;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      vanish = vanish && anticommutator(t.J[i].matrix, t.J[j].matrix) == ExprMatrix(8, 8);
    bool listed = (e.e1 == -1 && e.e2 == 1 && e.e3 == -1) || (e.e1 == -1 && e.e2 == -1 && e.e3 == 1);
    CHECK(vanish == listed);
    CHECK(anticommutator_report(t).all_vanish == listed);
    if (listed) {
      ProductReport p = product_identities(t);
      CHECK(p.hyper_type == "generalized hyper-para-complex");
      CHECK(p.triple_product_sign == (e.e2 == 1 ? 1 : -1));
    }
  }
}

TEST_CASE("combination law at dP = -2") {
  Triple t = make_triple({-1, 1, -1}, stream(-2));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  for (int i = 0; i < 10; ++i) {
    Rational a1(num(rng), den(rng)), a2(num(rng), den(rng)), a3(num(rng), den(rng));
    a1.canonicalize();
    a2.canonicalize();
    a3.canonicalize();
    // J1^2 = Id, J2^2 = -Id, J3^2 = Id here.
    auto c = combo_classify(a1, a2, a3, t);
    CHECK(c.s == -a1 * a1 + a2 * a2 - a3 * a3);
    CHECK(c.A.matrix * c.A.matrix == -Expr(c.s) * I8());
  }
}
