#pragma once

// Named verification suites. Each suite returns one CheckResult per measured
// quantity; a suite passes when all of its checks do.

#include <string>
#include <vector>

namespace rss {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0;      // measured residual or error
  double tolerance = 0;  // threshold the value was compared against
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> only;     // empty: every suite
  bool inject_table_fault = false;   // flips the sign of one tabulated coefficient
  unsigned seed = 20240917u;
};

/// Suite names in execution order.
std::vector<std::string> verify_suite_names();

/// Runs one suite; throws InvalidInput for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options = {});

std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// Printed-table entries known to disagree with the boundary-condition solve.
std::vector<std::string> known_table_typos();

}  // namespace rss
