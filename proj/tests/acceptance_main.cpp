// Runs the acceptance suite, prints one line per criterion, and exits
// nonzero unless every outcome is as expected.

#include <iostream>

#include "eqloc/acceptance.hpp"

int main() {
  const auto results = eqloc::run_acceptance(&std::cerr);
  eqloc::print_acceptance(results, std::cout, true);
  const bool ok = eqloc::acceptance_as_expected(results);
  std::cout << (ok ? "acceptance: all outcomes as expected\n" : "acceptance: unexpected outcome\n");
  return ok ? 0 : 1;
}
