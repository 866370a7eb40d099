// Dedicated acceptance binary: one pass/fail line per criterion, nonzero
// exit on any failure.
#include <iostream>

#include "relaycomp/acceptance.hpp"

int main() {
  auto results = relaycomp::run_acceptance();
  relaycomp::print_acceptance(results, std::cout);
  return relaycomp::acceptance_passed(results) ? 0 : 1;
}
