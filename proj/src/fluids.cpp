#include "mage/fluids.hpp"

#include <cmath>

#include "mage/errors.hpp"

namespace mage {

namespace {

bool planar(const Expr& e) { return !e.depends_on(Symbol::P) && !e.depends_on(Symbol::Q); }

Expr dx(const Expr& e) { return differentiate(e, Symbol::X); }
Expr dy(const Expr& e) { return differentiate(e, Symbol::Y); }

}  // namespace

VelocityField::VelocityField(Expr a_, Expr b_, Rational viscosity_)
    : a(std::move(a_)), b(std::move(b_)), viscosity(std::move(viscosity_)) {
  if (!planar(a) || !planar(b)) throw DomainError("velocity components must depend on x, y only");
}

VelocityField VelocityField::from_stream(const StreamFunction& f) {
  return {dy(f.expr()), -dx(f.expr())};
}

PressureData PressureData::from(const Expr& dP, const SampleOptions& opts) {
  if (!planar(dP)) throw DomainError("pressure Laplacian must depend on x, y only");
  if (dP.is_zero_structural()) throw DomainError("pressure Laplacian vanishes identically");
  PressureData d{dP, 0, false};
  if (auto c = dP.constant()) {
    d.sign = *c > 0 ? 1 : -1;
    d.exact = true;
    return d;
  }
  int pos = 0, neg = 0, valid = 0;
  for (const Point4& pt : sample_points(opts)) {
    double v;
    try {
      v = evaluate(dP, {pt.x, pt.y, 0, 0});
    } catch (const DomainError&) {
      continue;
    }
    ++valid;
    if (v > opts.tolerance) ++pos;
    if (v < -opts.tolerance) ++neg;
  }
  if (valid == 0) throw DomainError("no valid sample points");
  if (pos == valid) d.sign = 1;
  if (neg == valid) d.sign = -1;
  return d;
}

Expr divergence(const VelocityField& v) { return dx(v.a) + dy(v.b); }

Expr pressure_rhs(const VelocityField& v, const SampleOptions& opts) {
  Expr div = divergence(v);
  if (!is_zero(div, opts).zero()) throw DomainError("velocity is not divergence free: div v = " + div.str());
  return Expr(2) * (dx(v.a) * dy(v.b) - dy(v.a) * dx(v.b));
}

ZeroVerdict laplacian_divergence_identity(const VelocityField& v, const SampleOptions& opts) {
  Expr lap_a = dx(dx(v.a)) + dy(dy(v.a));
  Expr lap_b = dx(dx(v.b)) + dy(dy(v.b));
  // Embedding v = (a, b, 0): curl v = (0, 0, w) with w = b_x - a_y, and
  // curl curl v = (w_y, -w_x, 0).
  Expr w = dx(v.b) - dy(v.a);
  Expr cc_a = dy(w), cc_b = -dx(w);
  ZeroVerdict direct = is_zero(dx(lap_a) + dy(lap_b), opts);
  ZeroVerdict via_curl = is_zero(dx(cc_a) + dy(cc_b), opts);
  return combine({direct, via_curl});
}

MAStructure stream_structure(const PressureData& dp) {
  if (dp.sign == 0)
    throw DomainError("pressure Laplacian is not sign-definite on the sample box: " + dp.laplacian.str());
  const Expr& P = dp.laplacian;
  MAStructure m;
  m.D = sqrt(Expr(2) / abs(P));
  m.E = -P / sqrt(abs(Expr(2) * P));
  Expr pf = pfaffian(m);
  if (!is_zero(pf - Expr(dp.sign)).zero())
    throw InternalError("stream structure Pfaffian is " + pf.str() + ", expected sgn(dP)");
  return m;
}

Expr stream_residual(const StreamFunction& f, const PressureData& dp) {
  return pde_residual(stream_structure(dp), f);
}

Expr hessian_determinant(const StreamFunction& f) {
  Expr fx = dx(f.expr()), fy = dy(f.expr());
  return dx(fx) * dy(fy) - dy(fx) * dx(fy);
}

}  // namespace mage
