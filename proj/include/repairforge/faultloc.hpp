#pragma once

#include <string>
#include <vector>

#include "repairforge/suite.hpp"

namespace repairforge {

enum class Formula { Ochiai, Tarantula };

const char* formula_name(Formula f);                  // "ochiai", "tarantula"
Formula formula_from_name(const std::string& s);      // throws std::invalid_argument

struct LineScore {
    int line = 0;
    double score = 0.0;
    int ef = 0;  // failing tests covering the line
    int ep = 0;  // passing tests covering the line
};

struct Localization {
    // Score descending, later line first on ties. Lines no test covers are
    // absent; lines only passing tests cover appear with score zero.
    std::vector<LineScore> ranking;
    int total_failed = 0;
    int total_passed = 0;
    std::vector<std::string> failing_tests;
};

Localization localize(const Program& p, const std::vector<TestCase>& tests,
                      Formula formula);

std::vector<int> top_lines(const Localization& loc, int k);

}  // namespace repairforge
