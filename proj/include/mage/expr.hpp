#pragma once

// Exact symbolic expressions over the phase-space coordinates (x, y, p, q).
//
// An Expr is kept in canonical form at all times: a quotient N/D of expanded
// polynomials whose "variables" are the four coordinates and function kernels
// (sqrt, abs, sgn, sin, cos, exp applied to canonical arguments). Polynomials
// in x, y, p, q alone have a unique representation, so zero-testing them is
// exact. Anything else falls back to seeded random sampling.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mage {

using Rational = mpq_class;

enum class Symbol : std::uint8_t { X = 0, Y = 1, P = 2, Q = 3 };
inline constexpr std::array<Symbol, 4> kSymbols{Symbol::X, Symbol::Y, Symbol::P, Symbol::Q};

enum class Func : std::uint8_t { Sqrt, Abs, Sgn, Sin, Cos, Exp };

std::string_view symbol_name(Symbol s);
std::string_view func_name(Func f);

namespace detail {
struct ExprRep;
}

class Expr {
 public:
  Expr();  // zero
  Expr(long value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const Rational& value);

  static Expr symbol(Symbol s);
  static Expr apply(Func f, const Expr& arg);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Throws DomainError when the divisor is identically zero.
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  /// Structural equality of canonical forms.
  friend bool operator==(const Expr& a, const Expr& b);

  bool is_zero_structural() const;
  std::optional<Rational> constant() const;
  /// True for the rational subclass: a polynomial in x, y, p, q with no
  /// function kernels and no non-constant denominator.
  bool is_polynomial() const;
  bool has_denominator() const;
  /// True when some sqrt/abs/sgn/sin/cos/exp kernel survives canonicalization.
  bool has_kernels() const;
  /// Bit i is set when symbol i occurs anywhere, including kernel arguments.
  unsigned free_symbols() const;
  bool depends_on(Symbol s) const { return (free_symbols() >> static_cast<unsigned>(s)) & 1U; }

  std::string str() const;

  const detail::ExprRep& rep() const { return *rep_; }
  explicit Expr(std::shared_ptr<const detail::ExprRep> rep) : rep_(std::move(rep)) {}

 private:
  std::shared_ptr<const detail::ExprRep> rep_;
};

Expr pow(const Expr& base, int exponent);
inline Expr sqrt(const Expr& e) { return Expr::apply(Func::Sqrt, e); }
inline Expr abs(const Expr& e) { return Expr::apply(Func::Abs, e); }
inline Expr sgn(const Expr& e) { return Expr::apply(Func::Sgn, e); }

inline const Expr kX = Expr::symbol(Symbol::X);
inline const Expr kY = Expr::symbol(Symbol::Y);
inline const Expr kP = Expr::symbol(Symbol::P);
inline const Expr kQ = Expr::symbol(Symbol::Q);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Parses the expression grammar (coordinates x, y, p, q; functions sqrt, abs,
/// sgn, sin, cos, exp; rational and decimal literals). Throws ParseError.
Expr parse(std::string_view text);

Expr differentiate(const Expr& e, Symbol s);

using Substitution = std::array<std::optional<Expr>, 4>;
Expr substitute(const Expr& e, const Substitution& sub);

struct Point4 {
  double x = 0, y = 0, p = 0, q = 0;
  double operator[](Symbol s) const;
};

/// IEEE evaluation. Throws DomainError for a vanishing denominator or a
/// negative sqrt argument, naming the offending subterm.
double evaluate(const Expr& e, const Point4& pt);

struct SampleOptions {
  std::uint64_t seed = 0x4D41;
  double half_width = 2.0;
  double tolerance = 1e-9;
  int count = 64;
};

/// The fixed pseudo-random points of the box [-h, h]^4 used by every
/// sampled verdict.
std::vector<Point4> sample_points(const SampleOptions& opts = {});

struct ZeroVerdict {
  enum class Kind { ProvenZero, ProvenNonzero, NumericZero, NumericNonzero };

  Kind kind = Kind::ProvenZero;
  int samples = 0;        // NumericZero
  double tolerance = 0;   // NumericZero
  Point4 witness{};       // NumericNonzero
  double value = 0;       // NumericNonzero

  bool zero() const { return kind == Kind::ProvenZero || kind == Kind::NumericZero; }
  bool exact() const { return kind == Kind::ProvenZero || kind == Kind::ProvenNonzero; }

  static ZeroVerdict proven_zero() { return {}; }
  static ZeroVerdict proven_nonzero() { return {.kind = Kind::ProvenNonzero}; }
};

std::string describe(const ZeroVerdict& v);

/// Exact for kernel-free (rational function) expressions; otherwise sampled at opts.count points.
/// Throws DomainError("no valid sample points") if every point is skipped.
ZeroVerdict is_zero(const Expr& e, const SampleOptions& opts = {});

/// Folds several verdicts into one: nonzero wins, numeric taints exactness.
ZeroVerdict combine(const std::vector<ZeroVerdict>& verdicts);

}  // namespace mage
