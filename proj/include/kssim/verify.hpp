#pragma once

#include <string>
#include <vector>

namespace kssim {

// One acceptance criterion outcome. qoi is the measured quantity the
// criterion is judged on; detail spells out the measurement and tolerance.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double qoi = 0.0;
  std::string detail;
};

// Runs the acceptance suite. "fast" covers the cheap numerics checks
// (oracle match, operator orders, conservation, constant algebra, rhs
// equivalence); "full" adds the long-horizon statistical criteria. Any other
// suite name is a config error.
std::vector<CriterionResult> run_verify(const std::string& suite);

bool all_passed(const std::vector<CriterionResult>& results);

// Fixed-format report line: "[PASS] 03 mass_conservation qoi=... ; detail".
std::string criterion_line(const CriterionResult& r);

}  // namespace kssim
