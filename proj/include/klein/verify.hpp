#pragma once

// Verification suites: one per acceptance criterion, each a list of named
// checks against a single table of expected values.

#include <string>
#include <vector>

namespace klein {

struct GoldenValue {
  std::string key;
  std::string expected;
  std::string source;  // what the number describes
};

/// All expected values used by the suites.
const std::vector<GoldenValue>& golden_values();
/// Throws std::out_of_range for an unknown key.
const GoldenValue& golden(const std::string& key);

struct Check {
  std::string name;
  std::string expected;
  std::string found;
  bool pass = false;
  std::string source;
};

struct SuiteResult {
  int criterion = 0;
  std::string key;    // "klein", "kprime", ...
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0;
  bool completed = true;  // false when the suite threw

  [[nodiscard]] bool pass() const;
  /// First failing check, or the last check when all pass.
  [[nodiscard]] const Check& headline() const;
};

/// Suite keys in criterion order (1..12).
const std::vector<std::string>& suite_keys();

/// Runs one suite by key or by criterion number ("1".."12"). Exceptions
/// inside a suite become a failing check. Throws std::invalid_argument for
/// an unknown key.
SuiteResult run_suite(const std::string& key);

}  // namespace klein
