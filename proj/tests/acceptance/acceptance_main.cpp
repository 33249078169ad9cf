// Runs the acceptance criteria and prints one pass/fail line per criterion.
#include <cstdio>

#include "verify_suite.hpp"

int main() {
  bool all = true;
  for (const auto& r : jacobiflow::verify::run_all()) {
    std::printf("%s\n", jacobiflow::verify::format_line(r).c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILED");
  return all ? 0 : 1;
}
