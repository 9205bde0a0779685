#pragma once

#include <string>
#include <vector>

namespace magnus {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // key numbers and witnesses, deterministic
};

// The full verification suite in fixed order.  Each check traps its own
// exceptions and reports them as failures, so the suite always returns all
// entries.
std::vector<CheckResult> run_verification();

}  // namespace magnus
