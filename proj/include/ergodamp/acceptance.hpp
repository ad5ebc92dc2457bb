#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ergodamp {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

/// Runs one acceptance criterion (1..7). Throws InvalidParameter otherwise.
CriterionResult run_criterion(int id);

/// Runs the listed criteria (all seven when empty), printing one
/// "[PASS]/[FAIL] C<id> <title>: <detail>" line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& ids = {});

}  // namespace ergodamp
