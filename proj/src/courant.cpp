#include "mage/courant.hpp"

#include <complex>
#include <random>

#include "mage/errors.hpp"

namespace mage {

GenSection GenSection::basis(int k) {
  GenSection s;
  if (k < 4)
    s.X = VectorField::coordinate(static_cast<Symbol>(k));
  else
    s.xi = DifferentialForm::basis(static_cast<FormMask>(1U << (k - 4)));
  return s;
}

GenSection operator+(const GenSection& a, const GenSection& b) { return {a.X + b.X, a.xi + b.xi}; }
GenSection operator-(const GenSection& a, const GenSection& b) { return {a.X - b.X, a.xi - b.xi}; }
GenSection operator*(const Expr& s, const GenSection& a) { return {s * a.X, s * a.xi}; }

std::string GenSection::str() const { return "(" + X.str() + ", " + xi.str() + ")"; }

GenSection apply(const GenEndo& J, const GenSection& s) {
  std::array<Expr, 8> v;
  for (int i = 0; i < 4; ++i) {
    v[i] = s.X.components[i];
    v[i + 4] = s.xi.coefficient(static_cast<FormMask>(1U << i));
  }
  GenSection r;
  for (int i = 0; i < 8; ++i) {
    Expr c;
    for (int j = 0; j < 8; ++j)
      if (!v[j].is_zero_structural() && !J.matrix(i, j).is_zero_structural()) c += J.matrix(i, j) * v[j];
    if (i < 4)
      r.X.components[i] = c;
    else
      r.xi.add(static_cast<FormMask>(1U << (i - 4)), c);
  }
  return r;
}

GenSection courant_bracket(const GenSection& a, const GenSection& b) {
  GenSection r;
  r.X = lie_bracket(a.X, b.X);
  DifferentialForm pairing = interior_product(a.X, b.xi) - interior_product(b.X, a.xi);
  r.xi = lie_derivative(a.X, b.xi) - lie_derivative(b.X, a.xi) -
         Expr(Rational(1, 2)) * exterior_derivative(pairing);
  return r;
}

namespace {

GenSection nijenhuis_unchecked(const GenEndo& J, const GenSection& a, const GenSection& b) {
  GenSection Ja = apply(J, a), Jb = apply(J, b);
  GenSection ab = courant_bracket(a, b);
  return courant_bracket(Ja, Jb) + apply(J, apply(J, ab)) -
         apply(J, courant_bracket(Ja, b) + courant_bracket(a, Jb));
}

}  // namespace

GenSection nijenhuis(const GenEndo& J, const GenSection& a, const GenSection& b, const SampleOptions& opts) {
  if (!classify_generalized(J, opts).isotropic)
    throw DomainError("Nijenhuis undefined for non-isotropic structures");
  return nijenhuis_unchecked(J, a, b);
}

ZeroVerdict is_zero(const GenSection& s, const SampleOptions& opts) {
  ZeroVerdict v = is_zero(s.X, opts);
  if (!v.zero()) return v;
  return combine({v, is_zero(s.xi, opts)});
}

IsotropyReport isotropy_check(const GenEndo& J, const SampleOptions& opts) {
  GenType type = classify_generalized(J, opts);
  IsotropyReport r;
  r.structural = type.isotropic;
  r.numeric = true;

  SampleOptions sub = opts;
  sub.count = 16;
  using CMatrix = Eigen::MatrixXcd;
  const Eigen::MatrixXd eta = [] {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 4; ++i) e(i, i + 4) = e(i + 4, i) = 0.5;
    return e;
  }();
  const std::complex<double> i_unit(0, 1);

  for (const Point4& pt : sample_points(sub)) {
    Eigen::MatrixXd m;
    try {
      m = evaluate(J.matrix, pt);
    } catch (const DomainError&) {
      continue;
    }
    ++r.points;
    CMatrix Jc = m.cast<std::complex<double>>();
    CMatrix I = CMatrix::Identity(8, 8);
    // Projectors onto the +-1 (or +-i) eigenbundles; J^2 = gamma1 Id makes J
    // diagonalizable with these two eigenvalues only.
    for (int s : {1, -1}) {
      CMatrix P = type.gamma1 == 1 ? CMatrix((I + double(s) * Jc) / 2.0)
                                   : CMatrix((I - double(s) * i_unit * Jc) / 2.0);
      Eigen::FullPivLU<CMatrix> lu(P);
      lu.setThreshold(1e-9);
      CMatrix gram = P.transpose() * eta.cast<std::complex<double>>() * P;
      double worst = gram.cwiseAbs().maxCoeff();
      r.worst = std::max(r.worst, worst);
      if (lu.rank() != 4 || worst > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())) r.numeric = false;
    }
  }
  if (r.points == 0) throw DomainError("no valid sample points");
  if (r.numeric != r.structural)
    throw InternalError("isotropy: structural and numeric verdicts disagree for " + J.label);
  return r;
}

IntegrabilityReport integrability_check(const GenEndo& J, const SampleOptions& opts) {
  if (!classify_generalized(J, opts).isotropic)
    throw DomainError("integrability is defined for isotropic structures only");
  IntegrabilityReport r;
  std::vector<ZeroVerdict> verdicts;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      ZeroVerdict v = is_zero(nijenhuis_unchecked(J, GenSection::basis(i), GenSection::basis(j)), opts);
      if (!v.zero() && !r.witness) r.witness = std::pair{i, j};
      verdicts.push_back(v);
    }
  r.verdict = combine(verdicts);
  r.integrable = r.verdict.zero();

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  Expr h(1);
  for (int t = 0; t < 3; ++t) {
    Expr m(coef(rng));
    for (Symbol s : kSymbols) m *= pow(Expr::symbol(s), deg(rng));
    h += m;
  }
  std::vector<ZeroVerdict> tens;
  for (auto [i, j] : {std::pair{0, 5}, std::pair{2, 3}, std::pair{4, 7}}) {
    GenSection a = GenSection::basis(i), b = GenSection::basis(j);
    GenSection diff = nijenhuis_unchecked(J, h * a, b) - h * nijenhuis_unchecked(J, a, b);
    tens.push_back(is_zero(diff, opts));
  }
  r.tensoriality = combine(tens);
  return r;
}

}  // namespace mage
