#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "repairforge/ast.hpp"

namespace repairforge {

enum class RunStatus { Returned, RuntimeError, BoundExceeded, ProbeStarved };

enum class ErrorKind { DivByZero, Uninitialized, NoReturn };

const char* run_status_name(RunStatus s);
const char* error_kind_name(ErrorKind k);

// Snapshot of the live variables at one forced evaluation. Variables that
// hold no value yet are omitted.
struct EvalRecord {
    int line = 0;
    std::map<std::string, std::int64_t> env;
};

inline bool operator==(const EvalRecord& a, const EvalRecord& b) {
    return a.line == b.line && a.env == b.env;
}

// Replaces every evaluation of the expression slot at `line` with the next
// scripted value. A run that needs more values than the script holds stops
// with ProbeStarved.
struct Probe {
    int line = 0;
    std::vector<Value> script;
    std::vector<std::string> live_vars;
};

struct RunResult {
    RunStatus status = RunStatus::Returned;
    std::int64_t value = 0;                // Returned
    ErrorKind error = ErrorKind::NoReturn; // RuntimeError
    int error_line = 0;                    // RuntimeError
    std::set<int> coverage;                // statement lines that began executing
    std::vector<EvalRecord> records;       // one per forced evaluation
    std::size_t consumed = 0;              // script values used
    std::size_t steps = 0;                 // statement executions
};

// Statement executions allowed per run; each loop iteration re-counts the
// while statement.
inline constexpr std::size_t kStepBudget = 100000;

// Executes the function on `args` (one per parameter, in order). Never
// throws on MiniLang-level failures; those surface in the result status.
RunResult run_program(const Program& p, const std::vector<std::int64_t>& args,
                      const Probe* probe = nullptr,
                      std::size_t step_budget = kStepBudget);

// Evaluates an expression under an explicit environment. Missing variables
// and division by zero surface through `ok`; callers treat !ok as failure.
struct EvalOutcome {
    bool ok = false;
    Value value;
};
EvalOutcome eval_in_env(const ExprPtr& e,
                        const std::map<std::string, std::int64_t>& env,
                        const std::map<std::string, std::int64_t>& consts);

}  // namespace repairforge
