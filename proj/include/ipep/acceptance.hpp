#pragma once

#include <string>
#include <vector>

namespace ipep {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Run the full verification suite (12 criteria). Each criterion pins its
// tolerances in code; a failure carries the offending numbers in detail.
std::vector<CriterionResult> run_acceptance_suite();

// Print one PASS/FAIL line per criterion to stdout; returns the number of
// failed criteria.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace ipep
