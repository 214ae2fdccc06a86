#pragma once

// Run configuration: a flat key-value file with sections
//
//   [structure]    A B C D E           coefficient expressions
//   [fluids]       a b | dP, f         velocity pair or pressure Laplacian, optional stream function
//   [generalized]  eps1 eps2 eps3 a1 a2 a3 dP
//   [run]          tolerance seed box
//
// Lines starting with '#' or ';' are comments. Unknown sections or keys are
// parse errors so that typos cannot silently change a run.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mage/expr.hpp"

namespace mage {

struct RunConfig {
  std::map<std::string, std::string> structure;  // subset of A..E
  std::optional<std::string> velocity_a, velocity_b, fluid_dP, stream;
  std::array<int, 3> eps{1, 1, 1};
  std::array<std::string, 3> combo{"1", "0", "0"};
  std::string generalized_dP = "2";
  double tolerance = 1e-9;
  std::uint64_t seed = 0x4D41;
  double box = 2.0;

  SampleOptions sample_options() const;
  /// Checks tolerance > 0 and box > 0; throws ParseError otherwise.
  void validate() const;
};

/// Throws ParseError on malformed lines, unknown keys or bad numbers.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace mage
