// Acceptance suite: runs every gate criterion and prints one PASS/FAIL line
// each. Exits nonzero if any criterion fails.

#include <iostream>

#include "leomec/validation.hpp"

int main() {
    const auto results = leomec::validation::run_acceptance(std::cout, 0);
    int failures = 0;
    for (const auto& r : results) failures += r.pass ? 0 : 1;
    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: " + std::to_string(failures) +
                                      " criterion(s) failed\n");
    return failures;
}
