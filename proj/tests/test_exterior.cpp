#include <doctest.h>

#include <algorithm>
#include <random>

#include "mage/errors.hpp"
#include "mage/exterior.hpp"

using namespace mage;

namespace {

DifferentialForm form(FormMask m, const char* coef = "1") { return DifferentialForm::basis(m, parse(coef)); }

// Sign of the permutation sorting `seq`, by counting bubble-sort swaps.
int permutation_sign(std::vector<int> seq) {
  int swaps = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
      }
  return swaps % 2 ? -1 : 1;
}

Expr random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  Expr e;
  for (int t = 0; t < 3; ++t) {
    Expr m(coef(rng));
    for (Symbol s : kSymbols) m *= pow(Expr::symbol(s), deg(rng));
    e += m;
  }
  return e;
}

DifferentialForm random_form(std::mt19937_64& rng, int degree) {
  DifferentialForm f(degree);
  for (FormMask m = 0; m < 16; ++m)
    if (std::popcount(static_cast<unsigned>(m)) == degree) f.add(m, random_poly(rng));
  return f;
}

VectorField random_field(std::mt19937_64& rng) {
  VectorField v;
  for (auto& c : v.components) c = random_poly(rng);
  return v;
}

}  // namespace

TEST_CASE("wedge products") {
  CHECK(wedge(form(kDx), form(kDx)).is_zero_structural());
  DifferentialForm omega = symplectic_form();
  DifferentialForm oo = wedge(omega, omega);
  int sign = permutation_sign({0, 2, 1, 3});
  CHECK(sign == -1);
  CHECK(oo == form(kDx | kDy | kDp | kDq, sign > 0 ? "2" : "-2"));
  CHECK(wedge(form(kDx | kDy), form(kDp | kDq)).degree() == 4);
  CHECK(wedge(form(kDx | kDy | kDp), form(kDq | kDp)) == DifferentialForm(4));
}

TEST_CASE("wedge sign agrees with brute-force permutations") {
  for (FormMask a = 0; a < 16; ++a)
    for (FormMask b = 0; b < 16; ++b) {
      if (a & b) continue;
      auto ia = mask_indices(a), ib = mask_indices(b);
      std::vector<int> seq = ia;
      seq.insert(seq.end(), ib.begin(), ib.end());
      Expr expected(permutation_sign(seq));
      CHECK(wedge(form(a), form(b)).coefficient(a | b) == expected);
    }
}

TEST_CASE("exterior derivative") {
  CHECK(exterior_derivative(form(kDx, "p")) == form(kDx | kDp, "-1"));  // dp^dx = -dx^dp
  DifferentialForm vk = form(kDy | kDp, "-p") + form(kDx | kDq);       // p dp^dy + dx^dq
  CHECK(exterior_derivative(vk).is_zero_structural());
  // d(x q dx^dy) = x dq^dx^dy = x dx^dy^dq
  CHECK(exterior_derivative(form(kDx | kDy, "x*q")) == form(kDx | kDy | kDq, "x"));
}

TEST_CASE("interior products") {
  CHECK(interior_product(VectorField::coordinate(Symbol::X), form(kDx | kDp)) == form(kDp));
  CHECK(interior_product(VectorField::coordinate(Symbol::P), form(kDx | kDp)) == form(kDx, "-1"));
  CHECK(interior_product(VectorField::coordinate(Symbol::Q), symplectic_form()) == form(kDy, "-1"));
  CHECK_THROWS_AS(interior_product(VectorField::coordinate(Symbol::X), DifferentialForm::function(kX)),
                  DomainError);
}

TEST_CASE("lie brackets and derivatives") {
  auto dx = VectorField::coordinate(Symbol::X), dy = VectorField::coordinate(Symbol::Y);
  auto dp = VectorField::coordinate(Symbol::P), dq = VectorField::coordinate(Symbol::Q);
  CHECK(lie_bracket(dx, dy).is_zero_structural());
  CHECK(lie_bracket(kX * dy, dx) == Expr(-1) * dy);
  CHECK(lie_bracket(dp, kP * dq) == dq);
  CHECK(lie_derivative(dx, form(kDp, "x")) == form(kDp));
  CHECK(lie_derivative(dq, symplectic_form()).is_zero_structural());
  CHECK(lie_derivative(dx, DifferentialForm::function(parse("x^2*y"))) ==
        DifferentialForm::function(parse("2*x*y")));
}

TEST_CASE("pullback along df") {
  StreamFunction f(parse("x^3*y + y^2*x"));
  DifferentialForm laplace_like = form(kDx | kDq, "-1") + form(kDy | kDp);
  Expr fxx = parse("6*x*y"), fyy = parse("2*x");
  CHECK(pullback_df(laplace_like, f).coefficient(kDx | kDy) == -fyy - fxx);
  StreamFunction g(parse("(x^2+y^2)/2"));
  CHECK(pullback_df(laplace_like, g).coefficient(kDx | kDy) == Expr(-2));
  CHECK_THROWS_AS(StreamFunction(parse("p*x")), DomainError);
  CHECK_THROWS_AS(BaseForm(form(kDp)), DomainError);
}

TEST_CASE("identities on random forms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    int ka = trial % 3, kb = (trial / 3) % 3;
    DifferentialForm a = random_form(rng, ka), b = random_form(rng, kb);
    VectorField v = random_field(rng);
    int s = (ka * kb) % 2 ? -1 : 1;
    CHECK(wedge(a, b) == Expr(s) * wedge(b, a));
    CHECK(exterior_derivative(exterior_derivative(a)).is_zero_structural());
    if (ka >= 2) CHECK(interior_product(v, interior_product(v, a)).is_zero_structural());
    CHECK(lie_derivative(v, exterior_derivative(a)) == exterior_derivative(lie_derivative(v, a)));
    // Leibniz rule for d on products
    Expr sign(ka % 2 ? -1 : 1);
    CHECK(exterior_derivative(wedge(a, b)) ==
          wedge(exterior_derivative(a), b) + sign * wedge(a, exterior_derivative(b)));

    // Pullback is a ring map: f^*(a ^ b) = f^*a ^ f^*b
    StreamFunction f(parse("x^2*y - 3*y^3 + x"));
    DifferentialForm lhs = pullback_df(wedge(a, b), f).form();
    DifferentialForm rhs = wedge(pullback_df(a, f).form(), pullback_df(b, f).form());
    if (ka + kb <= 2) {
      CHECK(lhs == rhs);
    } else {
      CHECK(lhs.is_zero_structural());
      CHECK(rhs.is_zero_structural());
    }
  }
}
