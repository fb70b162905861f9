// The built-in invariant suite behind `lyacert selftest`.
#pragma once

#include <string>
#include <vector>

namespace lyacert::selftest {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every check. tol_scale multiplies all tolerances; the hidden
// --corrupt-tolerances hook passes a tiny value to prove failures are
// detected and reported.
std::vector<CheckResult> run_all(double tol_scale = 1.0);

}  // namespace lyacert::selftest
