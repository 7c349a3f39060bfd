// Acceptance battery runner: one pass/fail line per criterion.
#include <iostream>

#include "macregions/acceptance.hpp"

int main() {
  auto results = macregions::run_acceptance(std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "ALL CRITERIA PASSED\n" : "SOME CRITERIA FAILED\n");
  return all ? 0 : 3;
}
