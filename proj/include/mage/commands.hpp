#pragma once

// The analysis pipelines behind the command-line subcommands. Each returns a
// report; ParseError, DomainError and InternalError propagate to the caller,
// which maps them to exit codes 2, 3 and 4.

#include "mage/config.hpp"
#include "mage/report.hpp"

namespace mage {

/// Pfaffian, class, normalization, rho, g and the integrability verdict.
Report cmd_classify(const RunConfig& cfg);
/// Classification of the J1/J2/J3 triple for the configured signs and dP,
/// anticommutators, product identities, the a1 J1 + a2 J2 + a3 J3 combination,
/// metric compatibility and Nijenhuis verdicts.
Report cmd_generalized(const RunConfig& cfg);
/// Divergence, pressure right-hand side, stream structure and residual.
Report cmd_fluids(const RunConfig& cfg);
/// Closed matrix algebra of a constant anticommuting triple with its product
/// tables and identity verdicts.
Report cmd_algebra(const RunConfig& cfg);

}  // namespace mage
