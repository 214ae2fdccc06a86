#include <doctest.h>

#include <cmath>
#include <random>

#include "mage/errors.hpp"
#include "mage/expr.hpp"

using namespace mage;

TEST_CASE("parse canonicalizes polynomials") {
  CHECK(parse("x*y - y*x").is_zero_structural());
  CHECK(parse("(x+y)^2").str() == "x^2 + 2*x*y + y^2");
  CHECK(parse("0.5*p") == parse("p/2"));
  CHECK(parse("-7/2").str() == "-7/2");
  CHECK(parse("-x^2").str() == "-x^2");
  CHECK(parse("x^-1") == parse("1/x"));
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse("-B^2");
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse("x^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse("x^1.5"), ParseError);
  CHECK_THROWS_AS(parse("(x+y"), ParseError);
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1/(x-x)"), ParseError);
}

TEST_CASE("derivatives") {
  CHECK(differentiate(parse("p*q"), Symbol::P) == kQ);
  CHECK(differentiate(parse("sqrt(x)"), Symbol::X) == parse("1/(2*sqrt(x))"));
  CHECK(differentiate(parse("abs(x)"), Symbol::X) == parse("sgn(x)"));
  CHECK(differentiate(parse("sgn(x)"), Symbol::X).is_zero_structural());
  CHECK(differentiate(parse("sin(x*y)"), Symbol::Y) == parse("x*cos(x*y)"));
  CHECK(differentiate(parse("exp(2*q)"), Symbol::Q) == parse("2*exp(2*q)"));
  CHECK(differentiate(parse("x/(1+y)"), Symbol::Y) == parse("-x/(1+y)^2"));
}

TEST_CASE("zero verdicts") {
  CHECK(is_zero(parse("(x+y)^2 - x^2 - 2*x*y - y^2")).kind == ZeroVerdict::Kind::ProvenZero);
  auto v = is_zero(parse("sqrt(x^2) - abs(x)"));
  CHECK(v.kind == ZeroVerdict::Kind::NumericZero);
  CHECK(v.samples > 0);
  CHECK(is_zero(kP).kind == ZeroVerdict::Kind::ProvenNonzero);
  auto w = is_zero(parse("sqrt(x^2) - x"));
  REQUIRE(w.kind == ZeroVerdict::Kind::NumericNonzero);
  CHECK(w.witness.x < 0);
  CHECK_THROWS_AS(is_zero(parse("sqrt(-1-x^2) - 1")), DomainError);
}

TEST_CASE("evaluation") {
  CHECK(evaluate(parse("x*q"), {1, 0, 0, 3}) == doctest::Approx(3));
  CHECK_THROWS_AS(evaluate(parse("1/x"), {0, 1, 1, 1}), DomainError);
  CHECK(evaluate(parse("sqrt(2/abs(p))"), {0, 0, 2, 0}) == doctest::Approx(1));
  try {
    evaluate(parse("sqrt(x - 1)"), {0, 0, 0, 0});
    FAIL("expected failure");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("sqrt(x - 1)") != std::string::npos);
  }
  CHECK(evaluate(parse("sgn(x)"), {0, 0, 0, 0}) == 0);
}

TEST_CASE("kernel simplifications") {
  CHECK(parse("sqrt(x)^2") == kX);
  CHECK(parse("sqrt(4)") == Expr(2));
  CHECK(parse("sqrt(8)").str() == "2*sqrt(2)");
  CHECK(parse("abs(-3*x^2)") == parse("3*x^2"));
  CHECK(parse("sgn(2 + x^2)") == Expr(1));
  CHECK(parse("1/sqrt(2)") == parse("sqrt(2)/2"));
  CHECK(parse("sqrt(2)*sqrt(2)") == Expr(2));
  CHECK(parse("(x^2 - y^2)/(x - y)") == parse("x + y"));
}

namespace {

// Random polynomial with small integer coefficients, built independently of
// the parser by summing explicit monomials.
Expr random_poly(std::mt19937_64& rng, int terms, int max_deg) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, max_deg);
  Expr e;
  for (int t = 0; t < terms; ++t) {
    Expr m(coef(rng));
    for (Symbol s : kSymbols) m *= pow(Expr::symbol(s), deg(rng) % 3);
    e += m;
  }
  return e;
}

}  // namespace

TEST_CASE("properties on random polynomials") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Expr a = random_poly(rng, 4, 3);
    Expr b = random_poly(rng, 3, 2);
    CAPTURE(a.str());
    CHECK(parse(a.str()) == a);
    Expr q = a / (b + 7);
    CHECK(parse(q.str()) == q);
    CHECK(differentiate(differentiate(a, Symbol::X), Symbol::Y) ==
          differentiate(differentiate(a, Symbol::Y), Symbol::X));
    CHECK(is_zero((a + b) * (a - b) - (a * a - b * b)).kind == ZeroVerdict::Kind::ProvenZero);
    CHECK((a == b) == (is_zero(a - b).kind == ZeroVerdict::Kind::ProvenZero));

    // derivative against a central finite difference
    Point4 pt{0.3, -0.7, 1.1, 0.4};
    double h = 1e-5;
    Point4 lo = pt, hi = pt;
    lo.x -= h;
    hi.x += h;
    double fd = (evaluate(q, hi) - evaluate(q, lo)) / (2 * h);
    double exact = evaluate(differentiate(q, Symbol::X), pt);
    CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("substitution") {
  Substitution s;
  s[static_cast<int>(Symbol::P)] = parse("2*x");
  CHECK(substitute(parse("p^2 + sqrt(p^2)"), s) == parse("4*x^2 + 2*sqrt(x^2)"));
}

TEST_CASE("sampling is reproducible") {
  auto a = sample_points();
  auto b = sample_points();
  REQUIRE(a.size() == 64);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(std::abs(a[i].q) <= 2.0);
  }
}
