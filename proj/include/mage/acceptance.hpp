#pragma once

// The fourteen acceptance criteria as executable checks. Each check draws its
// random inputs from the configured seed, so two runs with the same options
// produce identical results.

#include <string>
#include <vector>

#include "mage/expr.hpp"
#include "mage/report.hpp"

namespace mage {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance(const SampleOptions& opts = {});

/// One section per criterion plus a summary line.
Report acceptance_report(const std::vector<CriterionResult>& results, const SampleOptions& opts);

}  // namespace mage
