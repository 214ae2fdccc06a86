#pragma once

// Sections of TM + T*M, the Courant bracket and the generalized Nijenhuis
// tensor.

#include <optional>
#include <utility>

#include "mage/exterior.hpp"
#include "mage/gen_geom.hpp"

namespace mage {

struct GenSection {
  VectorField X;
  DifferentialForm xi{1};

  /// Basis section k: (d/d coordinate k, 0) for k < 4, (0, d coordinate k-4) otherwise.
  static GenSection basis(int k);

  friend GenSection operator+(const GenSection& a, const GenSection& b);
  friend GenSection operator-(const GenSection& a, const GenSection& b);
  friend GenSection operator*(const Expr& s, const GenSection& a);
  friend bool operator==(const GenSection& a, const GenSection& b) = default;

  bool is_zero_structural() const { return X.is_zero_structural() && xi.is_zero_structural(); }
  std::string str() const;
};

/// The endomorphism applied pointwise to a section.
GenSection apply(const GenEndo& J, const GenSection& s);

GenSection courant_bracket(const GenSection& a, const GenSection& b);

/// Throws DomainError("Nijenhuis undefined for non-isotropic structures").
GenSection nijenhuis(const GenEndo& J, const GenSection& a, const GenSection& b,
                     const SampleOptions& opts = {});

ZeroVerdict is_zero(const GenSection& s, const SampleOptions& opts = {});

struct IsotropyReport {
  bool structural = false;  // gamma1 * gamma2 = -1
  bool numeric = false;     // eigenbundles isotropic of rank 4 at every point
  int points = 0;
  double worst = 0;         // largest |eta(u, v)| over eigenvector pairs
};
IsotropyReport isotropy_check(const GenEndo& J, const SampleOptions& opts = {});

struct IntegrabilityReport {
  bool integrable = false;
  ZeroVerdict verdict;                      // combined over the 28 basis pairs
  std::optional<std::pair<int, int>> witness;  // first pair with N != 0
  ZeroVerdict tensoriality;                 // N(h s1, s2) - h N(s1, s2)
};
/// Throws DomainError for non-isotropic structures.
IntegrabilityReport integrability_check(const GenEndo& J, const SampleOptions& opts = {});

}  // namespace mage
