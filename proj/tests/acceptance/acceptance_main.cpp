// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Optional arguments select criteria by number.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ergodamp/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  const auto results = ergodamp::run_acceptance(std::cout, ids);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
