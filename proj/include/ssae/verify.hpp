#pragma once

// Acceptance checks shared by `singular-sae verify` and the acceptance
// binary.  Each check reports its worst deviation against a fixed tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssae/io.hpp"

namespace ssae::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst deviation observed
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240611;
  /// Overrides the number of random draws of the randomized checks.
  std::optional<int> trials;
  /// Replaces the three built-in models of the theorem check.
  std::optional<io::CustomModel> custom;
  /// Directory holding specfun_fixtures.json.
  std::string fixture_dir;
};

/// In report order: friedrichs, oscillator_special, ho_limit, theorem,
/// unitarity, closed_vs_matrix, oracle, specfun, wronskian.
const std::vector<std::string>& check_names();

/// Unknown names throw ConfigError.  Solver errors inside a check are
/// caught and reported as a failure.
CheckResult run_check(const std::string& name, const Options& opt);

std::vector<CheckResult> run(const std::vector<std::string>& names, const Options& opt);

nlohmann::json report_json(const std::vector<CheckResult>& results, const Options& opt);

}  // namespace ssae::verify
