#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fractal {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // worst-case deviation or the failing sub-check
};

// Runs the full verification suite. One result per criterion; every check
// is deterministic and self-contained.
std::vector<CriterionResult> run_verification_suite();

// Prints one pass/fail line per criterion; returns true iff all passed.
bool print_verification_suite(std::ostream& os);

} // namespace fractal
