#include "mage/algebra.hpp"

#include <random>

#include "mage/errors.hpp"

namespace mage {

namespace {

constexpr std::size_t kMaxDimension = 64;

std::vector<Rational> flatten(const RatMatrix& m) { return {m.data().begin(), m.data().end()}; }

// Incremental row echelon form over the rationals that remembers how each
// stored row is built from the basis elements added so far.
class SpanReducer {
 public:
  struct Reduction {
    std::vector<Rational> remainder;
    std::vector<Rational> coords;  // in terms of the basis indices
    bool in_span() const {
      for (const auto& r : remainder)
        if (r != 0) return false;
      return true;
    }
  };

  Reduction reduce(const std::vector<Rational>& v) const {
    Reduction r{v, std::vector<Rational>(count_, Rational(0))};
    for (const Row& row : rows_) {
      Rational f = r.remainder[row.pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) r.remainder[i] -= f * row.vec[i];
      for (std::size_t k = 0; k < row.coords.size(); ++k) r.coords[k] += f * row.coords[k];
    }
    return r;
  }

  /// Adds v as basis element number count(); returns false if dependent.
  bool add(const std::vector<Rational>& v) {
    Reduction r = reduce(v);
    if (r.in_span()) return false;
    std::size_t pivot = 0;
    while (r.remainder[pivot] == 0) ++pivot;
    Rational lead = r.remainder[pivot];
    Row row{pivot, std::move(r.remainder), {}};
    // remainder = v - sum coords_k b_k, with v = b_new.
    row.coords.assign(count_ + 1, Rational(0));
    for (std::size_t k = 0; k < count_; ++k) row.coords[k] = -r.coords[k];
    row.coords[count_] = 1;
    for (auto& x : row.vec) x /= lead;
    for (auto& x : row.coords) x /= lead;
    // Keep earlier rows reduced at the new pivot so reduce() stays one pass.
    for (Row& other : rows_) {
      Rational f = other.vec[pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < other.vec.size(); ++i) other.vec[i] -= f * row.vec[i];
      other.coords.resize(count_ + 1, Rational(0));
      for (std::size_t k = 0; k <= count_; ++k) other.coords[k] -= f * row.coords[k];
    }
    rows_.push_back(std::move(row));
    ++count_;
    for (Row& other : rows_) other.coords.resize(count_, Rational(0));
    return true;
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Rational> vec;
    std::vector<Rational> coords;
  };
  std::vector<Row> rows_;
  std::size_t count_ = 0;
};

RatMatrix jordan(const RatMatrix& a, const RatMatrix& b) { return product(ProductKind::Jordan, a, b); }
RatMatrix lie(const RatMatrix& a, const RatMatrix& b) { return product(ProductKind::Lie, a, b); }

template <class F>
IdentityCheck over_triples(const MatAlgebra& a, F&& holds) {
  IdentityCheck c;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) {
        ++c.checked;
        if (!holds(a.basis[i], a.basis[j], a.basis[k]) && c.holds) {
          c.holds = false;
          c.witness = std::array{i, j, k};
        }
      }
  return c;
}

}  // namespace

std::string_view product_name(ProductKind k) {
  switch (k) {
    case ProductKind::Associative: return "associative";
    case ProductKind::Lie: return "lie";
    case ProductKind::Jordan: return "jordan";
  }
  return "?";
}

RatMatrix product(ProductKind k, const RatMatrix& a, const RatMatrix& b) {
  switch (k) {
    case ProductKind::Associative: return a * b;
    case ProductKind::Lie: return commutator(a, b);
    case ProductKind::Jordan: return Rational(1, 2) * anticommutator(a, b);
  }
  return a * b;
}

std::optional<std::vector<Rational>> MatAlgebra::coordinates(const RatMatrix& m) const {
  SpanReducer reducer;
  for (const auto& b : basis) reducer.add(flatten(b));
  auto r = reducer.reduce(flatten(m));
  if (!r.in_span()) return std::nullopt;
  return r.coords;
}

RatMatrix MatAlgebra::element(const std::vector<Rational>& coords) const {
  RatMatrix m(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coords[k] != 0) m = m + coords[k] * basis[k];
  return m;
}

MatAlgebra close_algebra(const std::vector<GenEndo>& generators) {
  MatAlgebra a;
  SpanReducer reducer;
  auto try_add = [&](const RatMatrix& m, const std::string& label) {
    if (a.dim() >= kMaxDimension) throw InternalError("algebra closure exceeded dimension 64");
    if (!reducer.add(flatten(m))) return false;
    a.basis.push_back(m);
    a.labels.push_back(label);
    return true;
  };
  try_add(RatMatrix::identity(8), "Id");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto m = to_rational(generators[g].matrix);
    if (!m) throw DomainError("algebra closure requires constant structures");
    std::string label = generators[g].label.empty() ? "G" + std::to_string(g + 1) : generators[g].label;
    try_add(*m, label);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (try_add(a.basis[i] * a.basis[j], a.labels[i] + "*" + a.labels[j])) grew = true;
  }
  a.constants = product_table(a, ProductKind::Associative);
  return a;
}

ProductTable product_table(const MatAlgebra& a, ProductKind kind) {
  SpanReducer reducer;
  for (const auto& b : a.basis) reducer.add(flatten(b));
  ProductTable t(a.dim(), std::vector<std::vector<Rational>>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto r = reducer.reduce(flatten(product(kind, a.basis[i], a.basis[j])));
      if (!r.in_span())
        throw InternalError("product " + a.labels[i] + ", " + a.labels[j] + " leaves the algebra");
      t[i][j] = std::move(r.coords);
    }
  return t;
}

std::string describe_element(const MatAlgebra& a, const std::vector<Rational>& coords) {
  std::string s;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Rational& c = coords[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    std::string term = mag == 1 ? a.labels[k] : to_string(mag) + "*" + a.labels[k];
    if (s.empty())
      s = c < 0 ? "-" + term : term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

IdentityCheck verify_leibniz(const MatAlgebra& a) {
  return over_triples(a, [](const RatMatrix& A, const RatMatrix& B, const RatMatrix& C) {
    return lie(A, B * C) == lie(A, B) * C + B * lie(A, C);
  });
}

IdentityCheck verify_jordan_leibniz(const MatAlgebra& a) {
  return over_triples(a, [](const RatMatrix& A, const RatMatrix& B, const RatMatrix& C) {
    return lie(A, jordan(B, C)) == jordan(lie(A, B), C) + jordan(B, lie(A, C));
  });
}

IdentityCheck verify_jordan_identity(const MatAlgebra& a, std::uint64_t seed, int random_checks) {
  auto holds = [](const RatMatrix& A, const RatMatrix& B) {
    RatMatrix AA = jordan(A, A);
    return jordan(jordan(A, B), AA) == jordan(A, jordan(B, AA));
  };
  IdentityCheck c;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      ++c.checked;
      if (!holds(a.basis[i], a.basis[j]) && c.holds) {
        c.holds = false;
        c.witness = std::array<std::size_t, 3>{i, j, i};
      }
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  auto random_element = [&] {
    std::vector<Rational> coords(a.dim());
    for (auto& x : coords) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    return a.element(coords);
  };
  for (int t = 0; t < random_checks; ++t) {
    RatMatrix A = random_element(), B = random_element();
    ++c.checked;
    if (!holds(A, B)) c.holds = false;
  }
  return c;
}

IdentityCheck verify_lie_jordan(const MatAlgebra& a, const Rational& q_squared) {
  return over_triples(a, [&](const RatMatrix& A, const RatMatrix& B, const RatMatrix& C) {
    return q_squared * lie(lie(A, C), B) == jordan(jordan(A, B), C) - jordan(A, jordan(B, C));
  });
}

}  // namespace mage
