#include <algorithm>
#include <chrono>

#include "repairforge/repair.hpp"

namespace repairforge {

const char* attempt_status_name(AttemptStatus s) {
    switch (s) {
        case AttemptStatus::Infeasible: return "infeasible";
        case AttemptStatus::SynthesisExhausted: return "synthesis-exhausted";
        case AttemptStatus::ValidationFailed: return "validation-failed";
        case AttemptStatus::Accepted: return "accepted";
    }
    return "?";
}

const char* repair_status_name(RepairStatus s) {
    switch (s) {
        case RepairStatus::Repaired: return "repaired";
        case RepairStatus::AlreadyPassing: return "already-passing";
        case RepairStatus::NoPatchFound: return "no-patch-found";
    }
    return "?";
}

std::vector<std::int64_t> constant_pool_for(const Program& p, bool unrestricted) {
    if (unrestricted) {
        std::vector<std::int64_t> pool;
        for (std::int64_t v = -10; v <= 10; ++v) pool.push_back(v);
        return pool;
    }
    std::vector<std::int64_t> pool = body_literals(p);
    for (std::int64_t v : {std::int64_t{0}, std::int64_t{1}})
        if (std::find(pool.begin(), pool.end(), v) == pool.end())
            pool.push_back(v);
    std::sort(pool.begin(), pool.end());
    return pool;
}

RepairOutcome repair_program(const Program& p, const TestSuite& suite,
                             const RepairConfig& cfg) {
    RepairOutcome out;
    if (run_cases(p, suite.tests).all_passed()) {
        out.status = RepairStatus::AlreadyPassing;
        return out;
    }
    out.localization = localize(p, suite.tests, cfg.formula);
    out.pool = constant_pool_for(p, cfg.unrestricted_constants);

    auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    for (int line : top_lines(out.localization, cfg.top_k)) {
        if (elapsed_ms() > cfg.budget_total_ms) break;
        RepairAttempt attempt;
        attempt.line = line;
        for (const LineScore& s : out.localization.ranking)
            if (s.line == line) attempt.score = s.score;

        FixLocation loc = location_at(p, line);
        RepairConstraint constraint;
        try {
            constraint =
                build_repair_constraint(p, suite.tests, loc, out.pool, cfg.bounds);
        } catch (const InfeasibleLocation& e) {
            attempt.status = AttemptStatus::Infeasible;
            attempt.detail = e.what();
            out.attempts.push_back(std::move(attempt));
            continue;
        }

        ComponentSet comps = default_components(constraint, cfg.include_div);
        SynthResult sr = synthesize(constraint, comps, cfg.limits);
        attempt.visits = sr.visits;
        attempt.capped = sr.capped;
        if (sr.status != SynthStatus::Found) {
            attempt.status = AttemptStatus::SynthesisExhausted;
            out.attempts.push_back(std::move(attempt));
            continue;
        }
        attempt.candidate = sr.expr;

        Patch patch;
        patch.location = loc;
        patch.original = expression_at(p, line);
        patch.replacement = sr.expr;
        ProgramPtr patched = apply_patch(p, patch);

        if (run_cases(*patched, suite.tests).all_passed()) {
            attempt.status = AttemptStatus::Accepted;
            out.attempts.push_back(std::move(attempt));
            out.status = RepairStatus::Repaired;
            out.patch = std::move(patch);
            out.repaired = std::move(patched);
            return out;
        }
        // One candidate per location: the constraint admitted it but the
        // whole suite rejected it, so move on.
        attempt.status = AttemptStatus::ValidationFailed;
        out.attempts.push_back(std::move(attempt));
    }
    out.status = RepairStatus::NoPatchFound;
    return out;
}

}  // namespace repairforge
