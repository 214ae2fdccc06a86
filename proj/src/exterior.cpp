#include "mage/exterior.hpp"

#include <bit>

#include "mage/errors.hpp"

namespace mage {

namespace {

constexpr std::array<const char*, 4> kDifferentials{"dx", "dy", "dp", "dq"};

// Sign of moving the differentials of b past those of a into sorted order.
int merge_sign(FormMask a, FormMask b) {
  int swaps = 0;
  for (int j = 0; j < 4; ++j)
    if (b & (1U << j)) swaps += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  return swaps % 2 ? -1 : 1;
}

int bits_below(FormMask m, int i) { return std::popcount(static_cast<unsigned>(m & ((1U << i) - 1))); }

}  // namespace

DifferentialForm::DifferentialForm(int degree) : degree_(degree) {
  if (degree < 0 || degree > 4) throw DomainError("form degree out of range");
}

DifferentialForm DifferentialForm::basis(FormMask mask, const Expr& coefficient) {
  DifferentialForm f(std::popcount(static_cast<unsigned>(mask)));
  f.add(mask, coefficient);
  return f;
}

Expr DifferentialForm::coefficient(FormMask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Expr() : it->second;
}

void DifferentialForm::add(FormMask mask, const Expr& coefficient) {
  if (std::popcount(static_cast<unsigned>(mask)) != degree_)
    throw InternalError("basis element of the wrong degree");
  if (coefficient.is_zero_structural()) return;
  auto [it, inserted] = terms_.emplace(mask, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero_structural()) terms_.erase(it);
  }
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.degree_ != b.degree_) throw InternalError("adding forms of different degree");
  DifferentialForm r = a;
  for (const auto& [m, c] : b.terms_) r.add(m, c);
  return r;
}

DifferentialForm operator-(const DifferentialForm& a) {
  DifferentialForm r(a.degree_);
  for (const auto& [m, c] : a.terms_) r.add(m, -c);
  return r;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

DifferentialForm operator*(const Expr& s, const DifferentialForm& a) {
  DifferentialForm r(a.degree_);
  for (const auto& [m, c] : a.terms_) r.add(m, s * c);
  return r;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string mask_name(FormMask mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int i = 0; i < 4; ++i)
    if (mask & (1U << i)) {
      if (!s.empty()) s += "^";
      s += kDifferentials[i];
    }
  return s;
}

std::vector<int> mask_indices(FormMask mask) {
  std::vector<int> idx;
  for (int i = 0; i < 4; ++i)
    if (mask & (1U << i)) idx.push_back(i);
  return idx;
}

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string cs = c.str();
    if (m == 0) {
      s += cs;
      continue;
    }
    if (cs == "1") {
      s += mask_name(m);
    } else {
      bool compound = cs.find_first_of(" /") != std::string::npos;
      s += (compound ? "(" + cs + ")" : cs) + "*" + mask_name(m);
    }
  }
  return s;
}

VectorField VectorField::coordinate(Symbol s) {
  VectorField v;
  v[s] = Expr(1);
  return v;
}

Expr VectorField::apply(const Expr& f) const {
  Expr r;
  for (Symbol s : kSymbols)
    if (!(*this)[s].is_zero_structural()) r += (*this)[s] * differentiate(f, s);
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < 4; ++i) r.components[i] = a.components[i] + b.components[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < 4; ++i) r.components[i] = a.components[i] - b.components[i];
  return r;
}

VectorField operator*(const Expr& s, const VectorField& a) {
  VectorField r;
  for (int i = 0; i < 4; ++i) r.components[i] = s * a.components[i];
  return r;
}

bool VectorField::is_zero_structural() const {
  for (const auto& c : components)
    if (!c.is_zero_structural()) return false;
  return true;
}

std::string VectorField::str() const {
  static constexpr std::array<const char*, 4> names{"d/dx", "d/dy", "d/dp", "d/dq"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (components[i].is_zero_structural()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + components[i].str() + ")*" + names[i];
  }
  return s.empty() ? "0" : s;
}

BaseForm::BaseForm(const DifferentialForm& form) : form_(form) {
  if (form.degree() > 2) throw DomainError("base forms have degree at most 2");
  for (const auto& [m, c] : form.terms()) {
    if (m & (kDp | kDq)) throw DomainError("base form involves dp or dq");
    if (c.depends_on(Symbol::P) || c.depends_on(Symbol::Q))
      throw DomainError("base form coefficient depends on p or q: " + c.str());
  }
}

StreamFunction::StreamFunction(Expr f) : f_(std::move(f)) {
  if (f_.depends_on(Symbol::P) || f_.depends_on(Symbol::Q))
    throw DomainError("stream function depends on p or q: " + f_.str());
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  int deg = a.degree() + b.degree();
  if (deg > 4) return DifferentialForm(4);
  DifferentialForm r(deg);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      Expr c = ca * cb;
      r.add(static_cast<FormMask>(ma | mb), merge_sign(ma, mb) > 0 ? c : -c);
    }
  return r;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  if (a.degree() == 4) return DifferentialForm(4);
  DifferentialForm r(a.degree() + 1);
  for (const auto& [m, c] : a.terms())
    for (int j = 0; j < 4; ++j) {
      if (m & (1U << j)) continue;
      Expr dc = differentiate(c, static_cast<Symbol>(j));
      if (dc.is_zero_structural()) continue;
      // d(c) = sum_j c_j dx_j, and dx_j moves past the lower differentials of m.
      r.add(static_cast<FormMask>(m | (1U << j)), bits_below(m, j) % 2 ? -dc : dc);
    }
  return r;
}

DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a) {
  if (a.degree() == 0) throw DomainError("interior product of a 0-form");
  DifferentialForm r(a.degree() - 1);
  for (const auto& [m, c] : a.terms())
    for (int i = 0; i < 4; ++i) {
      if (!(m & (1U << i)) || v.components[i].is_zero_structural()) continue;
      Expr t = v.components[i] * c;
      r.add(static_cast<FormMask>(m & ~(1U << i)), bits_below(m, i) % 2 ? -t : t);
    }
  return r;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < 4; ++i) r.components[i] = a.apply(b.components[i]) - b.apply(a.components[i]);
  return r;
}

DifferentialForm lie_derivative(const VectorField& v, const DifferentialForm& a) {
  if (a.degree() == 0) return DifferentialForm::function(v.apply(a.coefficient(0)));
  DifferentialForm r = exterior_derivative(interior_product(v, a));
  if (a.degree() < 4) r = r + interior_product(v, exterior_derivative(a));
  return r;
}

BaseForm pullback_df(const DifferentialForm& a, const StreamFunction& f) {
  const Expr fx = differentiate(f.expr(), Symbol::X);
  const Expr fy = differentiate(f.expr(), Symbol::Y);
  const Expr fxx = differentiate(fx, Symbol::X);
  const Expr fxy = differentiate(fx, Symbol::Y);
  const Expr fyy = differentiate(fy, Symbol::Y);
  Substitution graph;
  graph[static_cast<int>(Symbol::P)] = fx;
  graph[static_cast<int>(Symbol::Q)] = fy;

  const std::array<DifferentialForm, 4> pulled{
      DifferentialForm::basis(kDx), DifferentialForm::basis(kDy),
      DifferentialForm::basis(kDx, fxx) + DifferentialForm::basis(kDy, fxy),
      DifferentialForm::basis(kDx, fxy) + DifferentialForm::basis(kDy, fyy)};

  DifferentialForm r(std::min(a.degree(), 2));
  if (a.degree() > 2) return BaseForm(r);
  for (const auto& [m, c] : a.terms()) {
    DifferentialForm term = DifferentialForm::function(substitute(c, graph));
    for (int i : mask_indices(m)) term = wedge(term, pulled[i]);
    r = r + term;
  }
  return BaseForm(r);
}

ZeroVerdict is_zero(const DifferentialForm& a, const SampleOptions& opts) {
  std::vector<ZeroVerdict> v;
  for (const auto& [m, c] : a.terms()) {
    v.push_back(is_zero(c, opts));
    if (!v.back().zero()) break;
  }
  return combine(v);
}

ZeroVerdict is_zero(const VectorField& f, const SampleOptions& opts) {
  std::vector<ZeroVerdict> v;
  for (const auto& c : f.components) {
    if (c.is_zero_structural()) continue;
    v.push_back(is_zero(c, opts));
    if (!v.back().zero()) break;
  }
  return combine(v);
}

DifferentialForm symplectic_form() {
  return DifferentialForm::basis(kDx | kDp) + DifferentialForm::basis(kDy | kDq);
}

}  // namespace mage
