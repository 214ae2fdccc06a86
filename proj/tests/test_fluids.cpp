#include <doctest.h>

#include "mage/errors.hpp"
#include "mage/fluids.hpp"

using namespace mage;

TEST_CASE("divergence") {
  CHECK(divergence({kY, -kX}).is_zero_structural());
  CHECK(divergence({kX, kY}) == Expr(2));
  CHECK(divergence(VelocityField::from_stream(StreamFunction(parse("x^3*y")))).is_zero_structural());
  CHECK_THROWS_AS(VelocityField(kP, kX), DomainError);
}

TEST_CASE("pressure right-hand side") {
  CHECK(pressure_rhs({kY, -kX}) == Expr(2));
  CHECK(pressure_rhs({kY, kX}) == Expr(-2));
  StreamFunction f(parse("(x^2+y^2)/2"));
  CHECK(pressure_rhs(VelocityField::from_stream(f)) == Expr(2) * hessian_determinant(f));
  CHECK_THROWS_WITH_AS(pressure_rhs({kX, kY}), doctest::Contains("divergence"), DomainError);
}

TEST_CASE("Laplacian divergence") {
  CHECK(laplacian_divergence_identity({kY, -kX}).kind == ZeroVerdict::Kind::ProvenZero);
  CHECK(laplacian_divergence_identity({parse("y^3"), parse("-x^3")}).kind == ZeroVerdict::Kind::ProvenZero);
  auto v = VelocityField::from_stream(StreamFunction(parse("x^3 - 2*x*y^2 + y + 5*x^2*y")));
  CHECK(laplacian_divergence_identity(v).kind == ZeroVerdict::Kind::ProvenZero);
}

TEST_CASE("stream structure") {
  MAStructure s = stream_structure(PressureData::from(Expr(2)));
  CHECK(s.D == Expr(1));
  CHECK(s.E == Expr(-1));
  CHECK(pfaffian(s) == Expr(1));
  MAStructure h = stream_structure(PressureData::from(Expr(-2)));
  CHECK(h.D == Expr(1));
  CHECK(h.E == Expr(1));
  CHECK(pfaffian(h) == Expr(-1));
  MAStructure var = stream_structure(PressureData::from(parse("2 + x^2")));
  CHECK(is_zero(pfaffian(var) - Expr(1)).zero());
  CHECK_FALSE(integrability(var).zero());
  CHECK_THROWS_AS(stream_structure(PressureData::from(kX)), DomainError);
  CHECK_THROWS_AS(PressureData::from(Expr()), DomainError);
}

TEST_CASE("stream residual") {
  CHECK(stream_residual(StreamFunction(parse("(x^2+y^2)/2")), PressureData::from(Expr(2))).is_zero_structural());
  CHECK(stream_residual(StreamFunction(parse("x*y")), PressureData::from(Expr(-2))).is_zero_structural());
  CHECK(stream_residual(StreamFunction(parse("x*y")), PressureData::from(Expr(2))) == Expr(-2));
}
