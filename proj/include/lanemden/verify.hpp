#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lanemden {

struct CheckResult {
  std::string name;
  bool passed;
  double value;      ///< measured discrepancy (or signed quantity for sign checks)
  double tolerance;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Fixed, deterministic invariant suite over every module (a few seconds).
VerifyReport run_verify();

/// One line per check: status, name, value, tolerance; then a summary line.
void write_verify_report(std::ostream& out, const VerifyReport& report);

}  // namespace lanemden
