#include "mage/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "mage/errors.hpp"

namespace mage {
namespace detail {

struct Kernel {
  Func fn;
  Expr arg;
  std::string key;  // printed form; kernels are ordered and compared by it
};
using KernelPtr = std::shared_ptr<const Kernel>;

struct Monomial {
  std::array<int, 4> sym{};
  std::vector<std::pair<KernelPtr, int>> ker;  // sorted by key, exponents > 0

  int degree() const {
    int d = sym[0] + sym[1] + sym[2] + sym[3];
    for (const auto& [k, e] : ker) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }
};

// Graded lex with x > y > p > q > kernels (kernels ordered by key). Returns
// >0 when a is the larger monomial.
int compare(const Monomial& a, const Monomial& b) {
  if (int da = a.degree(), db = b.degree(); da != db) return da > db ? 1 : -1;
  for (int i = 0; i < 4; ++i)
    if (a.sym[i] != b.sym[i]) return a.sym[i] > b.sym[i] ? 1 : -1;
  std::size_t n = std::min(a.ker.size(), b.ker.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [ka, ea] = a.ker[i];
    const auto& [kb, eb] = b.ker[i];
    if (ka->key != kb->key) return ka->key < kb->key ? 1 : -1;
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  if (a.ker.size() != b.ker.size()) return a.ker.size() > b.ker.size() ? 1 : -1;
  return 0;
}

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

using Poly = std::map<Monomial, Rational, MonomialOrder>;

struct ExprRep {
  Poly num;
  Poly den;  // empty means 1
};

}  // namespace detail

using detail::compare;
using detail::ExprRep;
using detail::Kernel;
using detail::KernelPtr;
using detail::Monomial;
using detail::Poly;

namespace {

constexpr int kMaxDivisionSteps = 20000;

Poly poly_const(const Rational& c) {
  Poly p;
  if (c != 0) p.emplace(Monomial{}, c);
  return p;
}

std::optional<Rational> poly_constant(const Poly& p) {
  if (p.empty()) return Rational(0);
  if (p.size() == 1 && p.begin()->first.is_one()) return p.begin()->second;
  return std::nullopt;
}

void add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_add(const Poly& a, const Poly& b, int sign = 1) {
  Poly r = a;
  for (const auto& [m, c] : b) add_term(r, m, sign > 0 ? c : Rational(-c));
  return r;
}

Poly poly_scale(const Poly& a, const Rational& s) {
  Poly r;
  if (s == 0) return r;
  for (const auto& [m, c] : a) r.emplace(m, c * s);
  return r;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < 4; ++i) r.sym[i] = a.sym[i] + b.sym[i];
  auto ia = a.ker.begin();
  auto ib = b.ker.begin();
  while (ia != a.ker.end() || ib != b.ker.end()) {
    if (ib == b.ker.end() || (ia != a.ker.end() && ia->first->key < ib->first->key)) {
      r.ker.push_back(*ia++);
    } else if (ia == a.ker.end() || ib->first->key < ia->first->key) {
      r.ker.push_back(*ib++);
    } else {
      r.ker.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return r;
}

// Raw product: kernels are treated as free variables.
Poly poly_mul_raw(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(r, mono_mul(ma, mb), ca * cb);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b);

Poly poly_pow(const Poly& base, int n) {
  Poly r = poly_const(1);
  for (int i = 0; i < n; ++i) r = poly_mul(r, base);
  return r;
}

// Applies sqrt(u)^2 = u, abs(u)^2 = u^2 and sgn(u)^3 = sgn(u) to one term.
Poly reduce_term(const Monomial& m, const Rational& c) {
  bool needs = false;
  for (const auto& [k, e] : m.ker) {
    if ((k->fn == Func::Sqrt || k->fn == Func::Abs) && e >= 2) needs = true;
    if (k->fn == Func::Sgn && e >= 3) needs = true;
  }
  if (!needs) return Poly{{m, c}};
  Monomial kept;
  kept.sym = m.sym;
  Poly factor = poly_const(1);
  for (const auto& [k, e] : m.ker) {
    const Poly& u = k->arg.rep().num;
    switch (k->fn) {
      case Func::Sqrt:
        if (e % 2) kept.ker.emplace_back(k, 1);
        factor = poly_mul(factor, poly_pow(u, e / 2));
        break;
      case Func::Abs:
        if (e % 2) kept.ker.emplace_back(k, 1);
        factor = poly_mul(factor, poly_pow(u, 2 * (e / 2)));
        break;
      case Func::Sgn:
        kept.ker.emplace_back(k, e >= 3 ? (e % 2 ? 1 : 2) : e);
        break;
      default:
        kept.ker.emplace_back(k, e);
    }
  }
  return poly_mul(Poly{{kept, c}}, factor);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly raw = poly_mul_raw(a, b);
  bool needs = false;
  for (const auto& [m, c] : raw)
    for (const auto& [k, e] : m.ker)
      if (((k->fn == Func::Sqrt || k->fn == Func::Abs) && e >= 2) || (k->fn == Func::Sgn && e >= 3))
        needs = true;
  if (!needs) return raw;
  Poly r;
  for (const auto& [m, c] : raw)
    for (const auto& [m2, c2] : reduce_term(m, c)) add_term(r, m2, c2);
  return r;
}

// Greatest common monomial divisor over all terms of the given polynomials.
Monomial mono_gcd(std::initializer_list<const Poly*> polys) {
  bool first = true;
  Monomial g;
  for (const Poly* p : polys) {
    for (const auto& [m, c] : *p) {
      if (first) {
        g = m;
        first = false;
        continue;
      }
      for (int i = 0; i < 4; ++i) g.sym[i] = std::min(g.sym[i], m.sym[i]);
      std::vector<std::pair<KernelPtr, int>> keep;
      for (const auto& [k, e] : g.ker) {
        auto it = std::find_if(m.ker.begin(), m.ker.end(),
                               [&](const auto& kv) { return kv.first->key == k->key; });
        if (it != m.ker.end()) keep.emplace_back(k, std::min(e, it->second));
      }
      g.ker = std::move(keep);
    }
  }
  return g;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < 4; ++i) {
    r.sym[i] = a.sym[i] - b.sym[i];
    if (r.sym[i] < 0) return std::nullopt;
  }
  for (const auto& [k, e] : a.ker) {
    auto it = std::find_if(b.ker.begin(), b.ker.end(),
                           [&](const auto& kv) { return kv.first->key == k->key; });
    int rest = e - (it == b.ker.end() ? 0 : it->second);
    if (rest < 0) return std::nullopt;
    if (rest > 0) r.ker.emplace_back(k, rest);
  }
  for (const auto& [k, e] : b.ker) {
    auto it = std::find_if(a.ker.begin(), a.ker.end(),
                           [&](const auto& kv) { return kv.first->key == k->key; });
    if (it == a.ker.end()) return std::nullopt;
  }
  return r;
}

Poly poly_div_mono(const Poly& p, const Monomial& m) {
  Poly r;
  for (const auto& [pm, c] : p) r.emplace(*mono_div(pm, m), c);
  return r;
}

// Exact division with the kernels treated as free variables.
std::optional<Poly> poly_exact_div(Poly num, const Poly& den) {
  Poly q;
  const auto& [lm, lc] = *den.begin();
  for (int steps = 0; !num.empty(); ++steps) {
    if (steps > kMaxDivisionSteps) return std::nullopt;
    auto t = mono_div(num.begin()->first, lm);
    if (!t) return std::nullopt;
    Rational c = num.begin()->second / lc;
    add_term(q, *t, c);
    num = poly_add(num, poly_mul_raw(Poly{{*t, c}}, den), -1);
  }
  return q;
}

mpz_class lcm_of_denominators(const Poly& p) {
  mpz_class l = 1;
  for (const auto& [m, c] : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

// Positive rational s with p = s * p', p' having coprime integer coefficients.
Rational content(const Poly& p) {
  mpz_class l = lcm_of_denominators(p);
  mpz_class g = 0;
  for (const auto& [m, c] : p) {
    mpz_class v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rational s(g, l);
  s.canonicalize();
  return s;
}

std::shared_ptr<ExprRep> make_rep(Poly num, Poly den = {}) {
  auto r = std::make_shared<ExprRep>();
  r->num = std::move(num);
  r->den = std::move(den);
  return r;
}

Expr from_poly(Poly p) { return Expr(make_rep(std::move(p))); }

Expr normalize(Poly num, Poly den) {
  if (num.empty()) return Expr();
  if (den.empty()) return from_poly(std::move(num));
  for (int guard = 0; guard < 64; ++guard) {
    Monomial g = mono_gcd({&num, &den});
    if (!g.is_one()) {
      num = poly_div_mono(num, g);
      den = poly_div_mono(den, g);
    }
    Monomial gd = mono_gcd({&den});
    Poly rat = poly_const(1);
    bool any = false;
    for (const auto& [k, e] : gd.ker) {
      if (k->fn == Func::Sqrt) {
        Monomial m;
        m.ker.emplace_back(k, 1);
        rat = poly_mul(rat, Poly{{m, Rational(1)}});
        any = true;
      }
    }
    if (!any) break;
    num = poly_mul(num, rat);
    den = poly_mul(den, rat);
  }
  if (auto c = poly_constant(den)) return from_poly(poly_scale(num, 1 / *c));
  if (auto q = poly_exact_div(num, den)) return from_poly(std::move(*q));
  // Denominator primitive with integer coefficients and positive leading term.
  Rational s = content(den);
  if (den.begin()->second < 0) s = -s;
  return Expr(make_rep(poly_scale(num, 1 / s), poly_scale(den, 1 / s)));
}

const Poly& den_or_one(const ExprRep& r, Poly& one) {
  if (r.den.empty()) {
    one = poly_const(1);
    return one;
  }
  return r.den;
}

// --- printing ---------------------------------------------------------------

std::string mono_str(const Monomial& m) {
  std::string out;
  auto emit = [&](const std::string& base, int e) {
    if (!out.empty()) out += "*";
    out += base;
    if (e != 1) out += "^" + std::to_string(e);
  };
  for (Symbol s : kSymbols)
    if (int e = m.sym[static_cast<int>(s)]) emit(std::string(symbol_name(s)), e);
  for (const auto& [k, e] : m.ker) emit(k->key, e);
  return out;
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p) {
    Rational mag = abs(c);
    bool neg = c < 0;
    std::string body;
    if (m.is_one()) {
      body = to_string(mag);
    } else if (mag == 1) {
      body = mono_str(m);
    } else {
      body = to_string(mag) + "*" + mono_str(m);
    }
    if (first) {
      out += neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

bool single_atom(const Poly& p) {
  if (p.size() != 1) return false;
  const auto& [m, c] = *p.begin();
  if (c != 1) return false;
  int atoms = 0;
  for (int e : m.sym) atoms += e > 0;
  atoms += static_cast<int>(m.ker.size());
  return atoms == 1;
}

// --- kernels ------------------------------------------------------------------

// Every term nonnegative: positive coefficient, symbols and sign-indefinite
// kernels at even powers.
bool provably_nonnegative(const Poly& p) {
  for (const auto& [m, c] : p) {
    if (c <= 0) return false;
    for (int e : m.sym)
      if (e % 2) return false;
    for (const auto& [k, e] : m.ker) {
      bool nonneg = k->fn == Func::Sqrt || k->fn == Func::Abs || k->fn == Func::Exp;
      if (!nonneg && e % 2) return false;
    }
  }
  return !p.empty();
}

bool provably_positive(const Poly& p) {
  if (!provably_nonnegative(p)) return false;
  for (const auto& [m, c] : p) {
    if (m.is_one()) return true;
    bool all_exp = std::all_of(m.sym.begin(), m.sym.end(), [](int e) { return e == 0; }) &&
                   std::all_of(m.ker.begin(), m.ker.end(),
                               [](const auto& kv) { return kv.first->fn == Func::Exp; });
    if (all_exp) return true;
  }
  return false;
}

Expr kernel_expr(Func f, const Expr& arg) {
  auto k = std::make_shared<Kernel>();
  k->fn = f;
  k->arg = arg;
  k->key = std::string(func_name(f)) + "(" + arg.str() + ")";
  Monomial m;
  m.ker.emplace_back(std::move(k), 1);
  return from_poly(Poly{{m, Rational(1)}});
}

// n = s^2 * r with r free of the small square factors we try.
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class s = 1;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return {s, 1};
  }
  for (unsigned long f = 2; f <= 1000; ++f) {
    mpz_class f2 = f * f;
    if (f2 > n) break;
    while (mpz_divisible_p(n.get_mpz_t(), f2.get_mpz_t())) {
      n /= f2;
      s *= f;
    }
  }
  return {s, n};
}

Expr sqrt_constant(const Rational& c) {
  if (c == 0) return Expr();
  if (c < 0) return kernel_expr(Func::Sqrt, Expr(c));
  mpz_class n = c.get_num() * c.get_den();
  auto [s, r] = split_square(n);
  Rational coef(s, c.get_den());
  coef.canonicalize();
  if (r == 1) return Expr(coef);
  return Expr(coef) * kernel_expr(Func::Sqrt, Expr(Rational(r)));
}

Expr apply_sqrt(const Expr& u) {
  const ExprRep& r = u.rep();
  if (auto c = u.constant()) return sqrt_constant(*c);
  if (!r.den.empty()) {
    Expr n = from_poly(r.num);
    Expr d = from_poly(r.den);
    return apply_sqrt(n * d) / Expr::apply(Func::Abs, d);
  }
  Rational s = content(r.num);
  Expr rest = from_poly(poly_scale(r.num, 1 / s));
  if (s != 1) return sqrt_constant(s) * kernel_expr(Func::Sqrt, rest);
  return kernel_expr(Func::Sqrt, rest);
}

Expr apply_abs(const Expr& u) {
  const ExprRep& r = u.rep();
  if (auto c = u.constant()) return Expr(Rational(abs(*c)));
  if (!r.den.empty())
    return apply_abs(from_poly(r.num)) / apply_abs(from_poly(r.den));
  Rational s = content(r.num);
  if (r.num.begin()->second < 0) s = -s;
  Poly rest = poly_scale(r.num, 1 / s);
  Expr mag(Rational(abs(s)));
  if (provably_nonnegative(rest)) return mag * from_poly(std::move(rest));
  return mag * kernel_expr(Func::Abs, from_poly(std::move(rest)));
}

Expr apply_sgn(const Expr& u) {
  const ExprRep& r = u.rep();
  if (auto c = u.constant()) return Expr(sgn(*c));
  if (!r.den.empty()) return apply_sgn(from_poly(r.num)) * apply_sgn(from_poly(r.den));
  Rational s = content(r.num);
  if (r.num.begin()->second < 0) s = -s;
  Poly rest = poly_scale(r.num, 1 / s);
  Expr sign(sgn(s));
  if (provably_positive(rest)) return sign;
  return sign * kernel_expr(Func::Sgn, from_poly(std::move(rest)));
}

}  // namespace

// --- Expr ---------------------------------------------------------------------

std::string_view symbol_name(Symbol s) {
  static constexpr std::array<std::string_view, 4> names{"x", "y", "p", "q"};
  return names[static_cast<int>(s)];
}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
    case Func::Sgn: return "sgn";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
  }
  return "?";
}

Expr::Expr() : rep_(make_rep({})) {}
Expr::Expr(long value) : rep_(make_rep(poly_const(Rational(value)))) {}
Expr::Expr(const Rational& value) : rep_(make_rep(poly_const(value))) {}

Expr Expr::symbol(Symbol s) {
  Monomial m;
  m.sym[static_cast<int>(s)] = 1;
  return from_poly(Poly{{m, Rational(1)}});
}

Expr Expr::apply(Func f, const Expr& arg) {
  switch (f) {
    case Func::Sqrt: return apply_sqrt(arg);
    case Func::Abs: return apply_abs(arg);
    case Func::Sgn: return apply_sgn(arg);
    case Func::Sin:
      if (arg.is_zero_structural()) return Expr();
      break;
    case Func::Cos:
    case Func::Exp:
      if (arg.is_zero_structural()) return Expr(1);
      break;
  }
  return kernel_expr(f, arg);
}

Expr operator+(const Expr& a, const Expr& b) {
  const ExprRep& ra = a.rep();
  const ExprRep& rb = b.rep();
  if (ra.den.empty() && rb.den.empty()) return from_poly(poly_add(ra.num, rb.num));
  if (ra.den.empty() == rb.den.empty() && ra.den.size() == rb.den.size() &&
      std::equal(ra.den.begin(), ra.den.end(), rb.den.begin(), [](const auto& l, const auto& r) {
        return compare(l.first, r.first) == 0 && l.second == r.second;
      }))
    return normalize(poly_add(ra.num, rb.num), ra.den);
  Poly one_a, one_b;
  const Poly& da = den_or_one(ra, one_a);
  const Poly& db = den_or_one(rb, one_b);
  return normalize(poly_add(poly_mul(ra.num, db), poly_mul(rb.num, da)), poly_mul(da, db));
}

Expr operator-(const Expr& a) {
  const ExprRep& r = a.rep();
  return Expr(make_rep(poly_scale(r.num, -1), r.den));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  const ExprRep& ra = a.rep();
  const ExprRep& rb = b.rep();
  if (ra.num.empty() || rb.num.empty()) return Expr();
  if (ra.den.empty() && rb.den.empty()) return from_poly(poly_mul(ra.num, rb.num));
  Poly one_a, one_b;
  return normalize(poly_mul(ra.num, rb.num),
                   poly_mul(den_or_one(ra, one_a), den_or_one(rb, one_b)));
}

Expr operator/(const Expr& a, const Expr& b) {
  const ExprRep& rb = b.rep();
  if (rb.num.empty()) throw DomainError("division by zero");
  const ExprRep& ra = a.rep();
  Poly one_a, one_b;
  return normalize(poly_mul(ra.num, den_or_one(rb, one_b)), poly_mul(den_or_one(ra, one_a), rb.num));
}

bool operator==(const Expr& a, const Expr& b) {
  auto same = [](const Poly& l, const Poly& r) {
    return l.size() == r.size() &&
           std::equal(l.begin(), l.end(), r.begin(), [](const auto& u, const auto& v) {
             return compare(u.first, v.first) == 0 && u.second == v.second;
           });
  };
  return same(a.rep().num, b.rep().num) && same(a.rep().den, b.rep().den);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent < 0) return Expr(1) / pow(base, -exponent);
  Expr r(1);
  Expr b = base;
  while (exponent) {
    if (exponent & 1) r *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return r;
}

bool Expr::is_zero_structural() const { return rep_->num.empty(); }

std::optional<Rational> Expr::constant() const {
  if (!rep_->den.empty()) return std::nullopt;
  return poly_constant(rep_->num);
}

bool Expr::has_kernels() const {
  for (const Poly* p : {&rep_->num, &rep_->den})
    for (const auto& [m, c] : *p)
      if (!m.ker.empty()) return true;
  return false;
}

bool Expr::has_denominator() const { return !rep_->den.empty(); }

bool Expr::is_polynomial() const {
  if (!rep_->den.empty()) return false;
  for (const auto& [m, c] : rep_->num)
    if (!m.ker.empty()) return false;
  return true;
}

unsigned Expr::free_symbols() const {
  unsigned mask = 0;
  for (const Poly* p : {&rep_->num, &rep_->den})
    for (const auto& [m, c] : *p) {
      for (int i = 0; i < 4; ++i)
        if (m.sym[i]) mask |= 1U << i;
      for (const auto& [k, e] : m.ker) mask |= k->arg.free_symbols();
    }
  return mask;
}

std::string Expr::str() const {
  const ExprRep& r = *rep_;
  if (r.den.empty()) return poly_str(r.num);
  std::string n = poly_str(r.num);
  if (r.num.size() > 1) n = "(" + n + ")";
  std::string d = poly_str(r.den);
  if (!single_atom(r.den)) d = "(" + d + ")";
  return n + "/" + d;
}

// --- rationals ----------------------------------------------------------------

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw ParseError("empty rational literal");
  Rational r;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    std::string digits = whole + frac;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    r = Rational(mpz_class(digits), den);
  } else {
    auto slash = s.find('/');
    std::string a = s.substr(0, slash);
    std::string b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto digits = [](const std::string& t) {
      return !t.empty() && std::all_of(t.begin(), t.end(), ::isdigit);
    };
    if (!digits(a) || !digits(b)) throw ParseError("malformed rational literal '" + std::string(text) + "'");
    mpz_class den(b);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(mpz_class(a), den);
  }
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

// --- parser -------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip();
    if (pos_ < text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero_structural()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (!accept('^')) return b;
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits_at = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    bool trailing = pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/' ||
                                            std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                            text_[pos_] == '(');
    if (pos_ == digits_at || trailing) throw ParseError("non-integer exponent", start);
    std::string_view digits = text_.substr(digits_at, pos_ - digits_at);
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    int n = std::stoi(std::string(digits));
    if (neg && b.is_zero_structural()) throw ParseError("division by zero", start);
    return pow(b, neg ? -n : n);
  }

  Expr primary() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      try {
        return Expr(parse_rational(text_.substr(start, pos_ - start)));
      } catch (const ParseError&) {
        throw ParseError("malformed number", start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view id = text_.substr(start, pos_ - start);
      for (Symbol s : kSymbols)
        if (id == symbol_name(s)) return Expr::symbol(s);
      for (Func f : {Func::Sqrt, Func::Abs, Func::Sgn, Func::Sin, Func::Cos, Func::Exp}) {
        if (id == func_name(f)) {
          if (!accept('(')) throw ParseError("expected '(' after " + std::string(id), pos_);
          Expr arg = expr();
          expect(')');
          return Expr::apply(f, arg);
        }
      }
      throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// --- calculus -------------------------------------------------------------------

namespace {

Expr kernel_derivative(const Kernel& k, Symbol s) {
  Expr du = differentiate(k.arg, s);
  if (du.is_zero_structural()) return Expr();
  Monomial m;
  m.ker.emplace_back(std::make_shared<Kernel>(k), 1);
  Expr self = from_poly(Poly{{m, Rational(1)}});
  switch (k.fn) {
    case Func::Sqrt: return du / (Expr(2) * self);
    case Func::Abs: return Expr::apply(Func::Sgn, k.arg) * du;
    case Func::Sgn: return Expr();
    case Func::Sin: return Expr::apply(Func::Cos, k.arg) * du;
    case Func::Cos: return -(Expr::apply(Func::Sin, k.arg) * du);
    case Func::Exp: return self * du;
  }
  return Expr();
}

Expr poly_derivative(const Poly& p, Symbol s) {
  const int si = static_cast<int>(s);
  Poly plain;
  Expr extra;
  std::map<std::string, Expr> kernel_cache;
  for (const auto& [m, c] : p) {
    if (m.sym[si] > 0) {
      Monomial d = m;
      d.sym[si] -= 1;
      add_term(plain, d, c * m.sym[si]);
    }
    for (std::size_t i = 0; i < m.ker.size(); ++i) {
      const auto& [k, e] = m.ker[i];
      if (!k->arg.depends_on(s)) continue;
      auto it = kernel_cache.find(k->key);
      if (it == kernel_cache.end()) it = kernel_cache.emplace(k->key, kernel_derivative(*k, s)).first;
      if (it->second.is_zero_structural()) continue;
      Monomial rest = m;
      if (e == 1)
        rest.ker.erase(rest.ker.begin() + static_cast<long>(i));
      else
        rest.ker[i].second -= 1;
      extra += from_poly(Poly{{rest, c * e}}) * it->second;
    }
  }
  return from_poly(std::move(plain)) + extra;
}

}  // namespace

Expr differentiate(const Expr& e, Symbol s) {
  if (!e.depends_on(s)) return Expr();
  const ExprRep& r = e.rep();
  Expr dn = poly_derivative(r.num, s);
  if (r.den.empty()) return dn;
  Expr n = from_poly(r.num);
  Expr d = from_poly(r.den);
  Expr dd = poly_derivative(r.den, s);
  return (dn * d - n * dd) / (d * d);
}

namespace {

Expr substitute_poly(const Poly& p, const Substitution& sub, std::map<std::string, Expr>& cache) {
  std::array<Expr, 4> vals;
  for (int i = 0; i < 4; ++i) vals[i] = sub[i] ? *sub[i] : Expr::symbol(static_cast<Symbol>(i));
  Expr total;
  for (const auto& [m, c] : p) {
    Expr t{c};
    for (int i = 0; i < 4; ++i)
      if (m.sym[i]) t *= pow(vals[i], m.sym[i]);
    for (const auto& [k, e] : m.ker) {
      auto it = cache.find(k->key);
      if (it == cache.end())
        it = cache.emplace(k->key, Expr::apply(k->fn, substitute(k->arg, sub))).first;
      t *= pow(it->second, e);
    }
    total += t;
  }
  return total;
}

}  // namespace

Expr substitute(const Expr& e, const Substitution& sub) {
  std::map<std::string, Expr> cache;
  const ExprRep& r = e.rep();
  Expr n = substitute_poly(r.num, sub, cache);
  if (r.den.empty()) return n;
  return n / substitute_poly(r.den, sub, cache);
}

// --- evaluation -------------------------------------------------------------------

double Point4::operator[](Symbol s) const {
  switch (s) {
    case Symbol::X: return x;
    case Symbol::Y: return y;
    case Symbol::P: return p;
    case Symbol::Q: return q;
  }
  return 0;
}

namespace {

struct EvalContext {
  explicit EvalContext(const Point4& point) : pt(point) {}
  const Point4& pt;
  std::unordered_map<const Kernel*, double> cache;
  double min_den = INFINITY;
  double min_sqrt = INFINITY;
  double max_term = 0;
};

double eval_expr(const ExprRep& r, EvalContext& ctx);

double eval_kernel(const Kernel& k, EvalContext& ctx) {
  if (auto it = ctx.cache.find(&k); it != ctx.cache.end()) return it->second;
  double u = eval_expr(k.arg.rep(), ctx);
  double v = 0;
  switch (k.fn) {
    case Func::Sqrt:
      ctx.min_sqrt = std::min(ctx.min_sqrt, std::abs(u));
      if (u < 0) throw DomainError("sqrt of negative argument in " + k.key);
      v = std::sqrt(u);
      break;
    case Func::Abs: v = std::abs(u); break;
    case Func::Sgn: v = u > 0 ? 1.0 : (u < 0 ? -1.0 : 0.0); break;
    case Func::Sin: v = std::sin(u); break;
    case Func::Cos: v = std::cos(u); break;
    case Func::Exp: v = std::exp(u); break;
  }
  ctx.cache.emplace(&k, v);
  return v;
}

double eval_poly(const Poly& p, EvalContext& ctx, double& max_term) {
  double total = 0;
  std::array<double, 4> coords{ctx.pt.x, ctx.pt.y, ctx.pt.p, ctx.pt.q};
  for (const auto& [m, c] : p) {
    double t = c.get_d();
    for (int i = 0; i < 4; ++i)
      if (m.sym[i]) t *= std::pow(coords[i], m.sym[i]);
    for (const auto& [k, e] : m.ker) t *= std::pow(eval_kernel(*k, ctx), e);
    max_term = std::max(max_term, std::abs(t));
    total += t;
  }
  return total;
}

double eval_expr(const ExprRep& r, EvalContext& ctx) {
  double num_scale = 0;
  double n = eval_poly(r.num, ctx, num_scale);
  if (r.den.empty()) {
    ctx.max_term = std::max(ctx.max_term, num_scale);
    return n;
  }
  double den_scale = 0;
  double d = eval_poly(r.den, ctx, den_scale);
  ctx.min_den = std::min(ctx.min_den, std::abs(d));
  if (d == 0) throw DomainError("division by zero in " + poly_str(r.den));
  ctx.max_term = std::max({ctx.max_term, num_scale, num_scale / std::abs(d)});
  return n / d;
}

}  // namespace

double evaluate(const Expr& e, const Point4& pt) {
  EvalContext ctx{pt};
  return eval_expr(e.rep(), ctx);
}

std::vector<Point4> sample_points(const SampleOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  auto coord = [&] {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -opts.half_width + 2.0 * opts.half_width * u;
  };
  std::vector<Point4> pts(static_cast<std::size_t>(opts.count));
  for (auto& pt : pts) {
    pt.x = coord();
    pt.y = coord();
    pt.p = coord();
    pt.q = coord();
  }
  return pts;
}

ZeroVerdict is_zero(const Expr& e, const SampleOptions& opts) {
  if (e.is_zero_structural()) return ZeroVerdict::proven_zero();
  if (!e.has_kernels()) return ZeroVerdict::proven_nonzero();
  constexpr double kGuard = 1e-9;
  int used = 0;
  for (const Point4& pt : sample_points(opts)) {
    EvalContext ctx{pt};
    double v = 0;
    try {
      v = eval_expr(e.rep(), ctx);
    } catch (const DomainError&) {
      continue;
    }
    if (ctx.min_den < kGuard || ctx.min_sqrt < kGuard || !std::isfinite(v)) continue;
    ++used;
    if (std::abs(v) >= opts.tolerance * (1.0 + ctx.max_term)) {
      ZeroVerdict r;
      r.kind = ZeroVerdict::Kind::NumericNonzero;
      r.witness = pt;
      r.value = v;
      return r;
    }
  }
  if (used == 0) throw DomainError("no valid sample points");
  ZeroVerdict r;
  r.kind = ZeroVerdict::Kind::NumericZero;
  r.samples = used;
  r.tolerance = opts.tolerance;
  return r;
}

ZeroVerdict combine(const std::vector<ZeroVerdict>& verdicts) {
  ZeroVerdict out = ZeroVerdict::proven_zero();
  for (const auto& v : verdicts) {
    if (!v.zero()) return v;
    if (!v.exact()) {
      if (out.exact() || v.samples < out.samples) out = v;
    }
  }
  return out;
}

std::string describe(const ZeroVerdict& v) {
  std::ostringstream os;
  switch (v.kind) {
    case ZeroVerdict::Kind::ProvenZero: return "zero (exact)";
    case ZeroVerdict::Kind::ProvenNonzero: return "nonzero (exact)";
    case ZeroVerdict::Kind::NumericZero:
      os << "zero (sampled, " << v.samples << " points, tol " << v.tolerance << ")";
      return os.str();
    case ZeroVerdict::Kind::NumericNonzero:
      os.precision(6);
      os << "nonzero (sampled, value " << v.value << " at (" << v.witness.x << ", " << v.witness.y
         << ", " << v.witness.p << ", " << v.witness.q << "))";
      return os.str();
  }
  return "?";
}

}  // namespace mage
