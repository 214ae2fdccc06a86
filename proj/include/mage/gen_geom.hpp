#pragma once

// Generalized almost structures on TM + T*M: classification by
// (J^2 = gamma1 Id, J^T eta J = gamma2 eta), the J1/J2/J3 triple of a
// normalized Monge-Ampere structure, and metric compatibility.

#include <array>
#include <optional>
#include <string>

#include "mage/gen_endo.hpp"
#include "mage/ma_core.hpp"

namespace mage {

enum class GenName { GaP, GaPC, GaC, GaAC };
std::string_view gen_name(GenName n);
GenName gen_name_for(int gamma1, int gamma2);

struct GenType {
  int gamma1 = 1;
  int gamma2 = 1;
  GenName name = GenName::GaP;
  bool isotropic = false;
  bool exact = true;  // both identities decided without sampling
};

/// Throws DomainError("not a generalized almost structure") when neither sign
/// works for one of the two identities.
GenType classify_generalized(const GenEndo& J, const SampleOptions& opts = {});

struct EpsilonTriple {
  int e1 = 1, e2 = 1, e3 = 1;
  int operator[](int i) const { return i == 0 ? e1 : i == 1 ? e2 : e3; }
  /// Pairwise anticommutation of the triple built from a structure with
  /// Pf = pf_sign: e1 = pf_sign and e2 = pf_sign * e3.
  bool anticommuting(int pf_sign = 1) const { return e1 == pf_sign && e2 == pf_sign * e3; }
  std::string str() const;
};

/// All eight sign choices in the order (+,+,+), (+,+,-), ..., (-,-,-).
std::array<EpsilonTriple, 8> all_epsilon_triples();

struct Triple {
  EpsilonTriple eps;
  std::array<GenEndo, 3> J;
  int pf_sign = 1;

  bool anticommuting() const { return eps.anticommuting(pf_sign); }
};

/// J1 = diag(rho, e1 rho*), J2 = [[0, a], [e2 a, 0]], J3 = [[0, w], [e3 w, 0]]
/// with a, w the component matrices of alpha and Omega and rho* the dual map
/// on covectors. Requires |Pf| = 1 with a constant sign.
Triple make_triple(const EpsilonTriple& eps, const MAStructure& m, const SampleOptions& opts = {});

struct AnticommutatorReport {
  std::array<ExprMatrix, 3> values;  // {J1,J2}, {J1,J3}, {J2,J3}
  std::array<ZeroVerdict, 3> verdicts;
  bool all_vanish = false;
};
/// Throws InternalError if the outcome contradicts Triple::anticommuting()
/// while every J_i squares to +-Id.
AnticommutatorReport anticommutator_report(const Triple& t, const SampleOptions& opts = {});

struct ProductReport {
  int triple_product_sign = 0;     // J1 J2 J3 = sign * Id, 0 if neither
  std::array<int, 3> cyclic_signs{};  // J_i J_{i+1} = s_i J_{i+2}; 0 if neither
  bool cyclic_law = false;         // all s_i = +1
  std::string hyper_type;          // "generalized hyper-complex" when every J_i^2 = -Id, else "...hyper-para-complex"
};
/// Throws DomainError("identities apply to anticommuting triples") unless the
/// three anticommutators vanish.
ProductReport product_identities(const Triple& t, const SampleOptions& opts = {});

struct ComboResult {
  Rational s;                    // -(a1^2 g1 + a2^2 g2 + a3^2 g3) with J_i^2 = g_i Id; a1^2 + e2 a2^2 + e3 a3^2 at Pf = 1
  std::optional<GenType> type;   // empty when not a structure
  GenEndo A;
};
/// Throws DomainError unless every J_i squares to +-Id.
ComboResult combo_classify(const Rational& a1, const Rational& a2, const Rational& a3, const Triple& t,
                           const SampleOptions& opts = {});

/// [[0, g^-1], [g, 0]]. Throws DomainError("g degenerate") when D vanishes.
GenEndo generalized_metric(const MAStructure& m, const SampleOptions& opts = {});

/// diag(rho, sgn(Pf) rho), the partner of the generalized metric for the
/// Kahler / chiral construction.
GenEndo metric_partner(const MAStructure& m, const SampleOptions& opts = {});

enum class Compatibility { Kahler, Chiral, Incompatible };
std::string_view compatibility_name(Compatibility c);

struct CompatibilityReport {
  Compatibility result = Compatibility::Incompatible;
  ZeroVerdict commutator;
  std::optional<GenType> partner_type;
};
/// Throws DomainError if G is not a non-degenerate GaP structure.
CompatibilityReport compatibility(const GenEndo& G, const GenEndo& J, const SampleOptions& opts = {});

/// Verdicts for [g, rho] and {g, rho}.
std::pair<ZeroVerdict, ZeroVerdict> metric_rho_relations(const MAStructure& m, const SampleOptions& opts = {});

}  // namespace mage
