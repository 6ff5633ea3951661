#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repairforge/faultloc.hpp"
#include "repairforge/synth.hpp"

namespace repairforge {

enum class AttemptStatus { Infeasible, SynthesisExhausted, ValidationFailed, Accepted };

const char* attempt_status_name(AttemptStatus s);

struct RepairAttempt {
    int line = 0;
    double score = 0.0;
    AttemptStatus status = AttemptStatus::Infeasible;
    ExprPtr candidate;  // synthesized replacement, when one was found
    long visits = 0;
    bool capped = false;
    std::string detail;
};

enum class RepairStatus { Repaired, AlreadyPassing, NoPatchFound };

const char* repair_status_name(RepairStatus s);

struct RepairConfig {
    Formula formula = Formula::Ochiai;
    int top_k = 5;
    SynthLimits limits;
    AngelicBounds bounds;
    bool unrestricted_constants = false;
    bool include_div = false;
    // Safety nets; the deterministic caps above normally bind first.
    long long budget_per_location_ms = 10000;
    long long budget_total_ms = 120000;
};

struct RepairOutcome {
    RepairStatus status = RepairStatus::NoPatchFound;
    Patch patch;          // Repaired
    ProgramPtr repaired;  // Repaired
    std::vector<RepairAttempt> attempts;
    Localization localization;
    std::vector<std::int64_t> pool;
};

// Body integer literals plus zero and one, or the full signed band when
// unrestricted.
std::vector<std::int64_t> constant_pool_for(const Program& p, bool unrestricted);

// Ranks suspicious lines, extracts a repair constraint per line, synthesizes
// one candidate each, and accepts the first candidate passing every test.
RepairOutcome repair_program(const Program& p, const TestSuite& suite,
                             const RepairConfig& cfg);

}  // namespace repairforge
