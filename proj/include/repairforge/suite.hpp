#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "repairforge/ast.hpp"
#include "repairforge/interp.hpp"

namespace repairforge {

struct TestCase {
    std::string name;
    std::vector<std::int64_t> inputs;
    std::int64_t expected = 0;
};

struct TestSuite {
    std::string function;
    std::vector<TestCase> tests;
    std::vector<TestCase> held_out;
};

struct SuiteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expected values may be written as integers or as the name of a declared
// constant; names resolve against `context` at load time.
TestSuite suite_from_json(const nlohmann::json& j, const Program& context);
TestSuite load_suite(const std::string& path, const Program& context);
nlohmann::json suite_to_json(const TestSuite& s);

struct CaseOutcome {
    std::string name;
    bool passed = false;
    std::int64_t expected = 0;
    RunResult run;
};

struct SuiteResult {
    std::vector<CaseOutcome> outcomes;
    int passed = 0;
    int failed = 0;
    bool all_passed() const { return failed == 0; }
};

// A case passes when the run returns normally with the expected value.
CaseOutcome run_case(const Program& p, const TestCase& t);
SuiteResult run_cases(const Program& p, const std::vector<TestCase>& cases);

}  // namespace repairforge
