#pragma once

// Oracle suites shared by the command-line front end: each property is
// evaluated by two independent routes and reported with its first
// counterexample.

#include <string>
#include <vector>

namespace mlkpz {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first counterexample, or a short summary
};

inline const std::vector<std::string> kCheckSuites{"kernels", "hermite", "trees", "constants"};

std::vector<CheckResult> check_kernels();
std::vector<CheckResult> check_hermite();
std::vector<CheckResult> check_trees();
std::vector<CheckResult> check_constants();

/// "kernels", "hermite", "trees", "constants" or "all". Throws
/// std::invalid_argument for other names.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace mlkpz
