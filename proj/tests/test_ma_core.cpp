#include <doctest.h>

#include <random>

#include "mage/errors.hpp"
#include "mage/fluids.hpp"
#include "mage/ma_core.hpp"

using namespace mage;

namespace {

MAStructure structure(const char* a, const char* b, const char* c, const char* d, const char* e) {
  return {parse(a), parse(b), parse(c), parse(d), parse(e)};
}

// The rho matrix written out entry by entry, before scaling.
ExprMatrix rho_literal(const MAStructure& m) {
  const Expr &A = m.A, &B = m.B, &C = m.C, &D = m.D, &E = m.E;
  Expr z;
  return ExprMatrix{{B, -A, z, -D}, {C, -B, D, z}, {z, E, B, C}, {-E, z, -A, -B}};
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("Pfaffian") {
  CHECK(pfaffian(laplace_structure()) == Expr(1));
  CHECK(pfaffian(von_karman_structure()) == kP);
  CHECK(pfaffian(structure("0", "0", "0", "1", "1")) == Expr(-1));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    MAStructure m{Expr(random_rational(rng)), Expr(random_rational(rng)), Expr(random_rational(rng)),
                  Expr(random_rational(rng)), Expr(random_rational(rng))};
    CHECK(pfaffian_by_wedge(m) == -m.B * m.B + m.A * m.C - m.D * m.E);
  }
}

TEST_CASE("effectivity and coefficient extraction") {
  MAStructure m = structure("x", "p*q", "3", "y^2", "q");
  DifferentialForm a = m.alpha();
  CHECK(wedge(a, symplectic_form()).is_zero_structural());
  CHECK(MAStructure::from_form(a) == m);
  DifferentialForm bad = a + DifferentialForm::basis(kDy | kDq, kX);
  CHECK_THROWS_AS(MAStructure::from_form(bad), DomainError);
}

TEST_CASE("classification") {
  CHECK(classify(laplace_structure()).type == MAType::Elliptic);
  CHECK(classify(laplace_structure()).exact);
  CHECK(classify(von_karman_structure()).type == MAType::Indefinite);
  CHECK(classify(stream_structure(PressureData::from(Expr(-2)))).type == MAType::Hyperbolic);
  CHECK(classify(structure("1", "1", "1", "0", "0")).type == MAType::Degenerate);
  CHECK(classify(structure("1+x^2", "0", "1", "0", "0")).type == MAType::Elliptic);
}

TEST_CASE("normalization") {
  CHECK(normalize(laplace_structure()) == laplace_structure());
  CHECK(normalize(structure("-2", "0", "-2", "0", "0")) == laplace_structure());
  CHECK_THROWS_WITH_AS(normalize(von_karman_structure()), doctest::Contains("normalization undefined"),
                       DomainError);
  MAStructure n = normalize(structure("3", "0", "1", "0", "0"));
  CHECK(is_zero(pfaffian(n) - Expr(1)).zero());
}

TEST_CASE("rho") {
  ExprMatrix expected{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  CHECK(rho(laplace_structure()) == expected);
  CHECK(rho(laplace_structure()) * rho(laplace_structure()) == Expr(-1) * ExprMatrix::identity(4));

  ExprMatrix stream = rho(stream_structure(PressureData::from(Expr(2))));
  ExprMatrix a{{0, -1}, {1, 0}};
  CHECK(stream == ExprMatrix::from_blocks(ExprMatrix(2, 2), a, a, ExprMatrix(2, 2)));

  // general dP against the closed form |2 dP|^(-1/2) [[0,0,0,-2],[0,0,2,0],[0,-dP,0,0],[dP,0,0,0]]
  for (const char* text : {"2 + x^2", "3", "-5 - y^2"}) {
    Expr P = parse(text);
    ExprMatrix closed{{0, 0, 0, -2}, {0, 0, 2, 0}, {0, -P, 0, 0}, {P, 0, 0, 0}};
    closed = (Expr(1) / sqrt(abs(Expr(2) * P))) * closed;
    MAStructure m = stream_structure(PressureData::from(P));
    CHECK(is_zero(rho(m) - closed).zero());
    CHECK(rho_square_law(m).zero());
  }

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    MAStructure m{Expr(random_rational(rng)), Expr(random_rational(rng)), Expr(random_rational(rng)),
                  Expr(random_rational(rng)), Expr(random_rational(rng))};
    if (pfaffian(m).is_zero_structural()) continue;
    Expr s = Expr(1) / sqrt(abs(pfaffian(m)));
    CHECK(is_zero(rho(m) - s * rho_literal(m)).zero());
    CHECK(rho_square_law(m).zero());
    Expr lambda(Rational(random_rational(rng) * random_rational(rng) + 1));
    if (*lambda.constant() > 0) {
      MAStructure scaled{lambda * m.A, lambda * m.B, lambda * m.C, lambda * m.D, lambda * m.E};
      CHECK(rho(scaled) == rho(m));
    }
  }
}

TEST_CASE("integrability") {
  CHECK(integrability(laplace_structure()).kind == ZeroVerdict::Kind::ProvenZero);
  CHECK(integrability(stream_structure(PressureData::from(Expr(2)))).zero());
  auto v = integrability(stream_structure(PressureData::from(parse("2 + x^2"))));
  CHECK(v.kind == ZeroVerdict::Kind::NumericNonzero);
  CHECK_THROWS_AS(integrability(structure("0", "0", "0", "0", "0")), DomainError);
}

TEST_CASE("metric") {
  ExprMatrix g = lr_metric(stream_structure(PressureData::from(Expr(2))));
  ExprMatrix I = ExprMatrix::identity(2);
  CHECK(g == ExprMatrix::from_blocks(ExprMatrix(2, 2), I, I, ExprMatrix(2, 2)));
  CHECK(determinant(lr_metric(laplace_structure())).is_zero_structural());
  MAStructure generic = structure("x", "y + 1", "p", "2 + q^2", "x*y");
  CHECK(lr_metric(generic) == lr_metric_by_wedge(generic));
  auto sig = signature(lr_metric(generic));
  REQUIRE(sig.has_value());
  CHECK(*sig == std::pair{2, 2});
  MAStructure other = generic;
  other.E = parse("sin(x) + 7");
  CHECK(lr_metric(other) == lr_metric(generic));
}

TEST_CASE("pde residual") {
  CHECK(pde_residual(laplace_structure(), StreamFunction(parse("x*y"))).is_zero_structural());
  MAStructure s2 = stream_structure(PressureData::from(Expr(2)));
  CHECK(pde_residual(s2, StreamFunction(parse("(x^2+y^2)/2"))).is_zero_structural());
  CHECK(pde_residual(s2, StreamFunction(parse("x^2"))) == Expr(-1));
  // von Karman: the pullback is p f_xx + f_yy on the graph
  StreamFunction f(parse("x^3 + x*y^2"));
  CHECK(pde_residual(von_karman_structure(), f) == parse("(3*x^2 + y^2)*(6*x) + 2*x"));
}

TEST_CASE("Hitchin pair and Banos structure") {
  CHECK(hitchin_pair_check(laplace_structure()).kind == ZeroVerdict::Kind::ProvenZero);
  CHECK(hitchin_pair_check(stream_structure(PressureData::from(Expr(2)))).zero());
  CHECK(hitchin_pair_check(von_karman_structure()).zero());
  CHECK_THROWS_AS(hitchin_pair_check(structure("1", "1", "1", "0", "0")), DomainError);

  BanosResult lap = banos_structure(laplace_structure(), Expr());
  CHECK(lap.J.matrix * lap.J.matrix == Expr(-1) * ExprMatrix::identity(8));
  CHECK(lap.divergence_free());
  CHECK(banos_structure(stream_structure(PressureData::from(Expr(2))), Expr()).divergence_free());
  CHECK_FALSE(banos_structure(structure("-1", "0", "-1", "0", "x*p"), Expr()).divergence_free());
  BanosResult vk = banos_structure(von_karman_structure(), Expr());
  CHECK(is_zero(vk.J.matrix * vk.J.matrix + ExprMatrix::identity(8)).zero());
}
