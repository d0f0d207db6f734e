#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qexlab {

struct CheckResult {
  std::string module;
  std::string op;
  std::string measure;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">="
  bool pass = false;
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::optional<double> tolerance;  // overrides every residual tolerance when set
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// Light invariant suite over every module at small sizes. Deterministic in
/// the seed.
VerifySummary verify_all(std::uint64_t seed, std::optional<double> tolerance = std::nullopt);

}  // namespace qexlab
