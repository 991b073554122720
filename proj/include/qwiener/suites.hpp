#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwiener {

struct SuiteResult {
    int index = 0;
    std::string name;
    bool passed = false;
    long checks = 0;
    long failures = 0;
    double seconds = 0.0;
    std::string detail; // fitted constants, extreme defects, or the first failure
};

inline constexpr int suite_count = 11;

// Seeded property suite; index runs 1..suite_count. cases_override > 0
// shrinks the random-instance counts for quick smoke runs; constructed
// examples always run in full.
SuiteResult run_suite(int index, std::uint64_t seed, int cases_override = 0);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int cases_override = 0);

} // namespace qwiener
