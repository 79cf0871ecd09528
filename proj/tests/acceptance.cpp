// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Optional argv[1] picks the suite ("fast" or "full", default full).
#include <cstdio>

#include "kssim/verify.hpp"

int main(int argc, char** argv) {
  const char* suite = argc > 1 ? argv[1] : "full";
  std::vector<kssim::CriterionResult> results;
  try {
    results = kssim::run_verify(suite);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  size_t passed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", kssim::criterion_line(r).c_str());
    if (r.pass) ++passed;
  }
  std::printf("%zu/%zu criteria passed\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}
