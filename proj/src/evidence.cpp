#include <cstdio>
#include <random>
#include <set>

#include "repairforge/evidence.hpp"

namespace repairforge {

Behavior behavior_of(const Program& p, const std::vector<std::int64_t>& inputs) {
    RunResult r = run_program(p, inputs);
    Behavior b;
    b.status = r.status;
    b.value = r.value;
    b.error = r.error;
    return b;
}

bool behaviors_differ(const Behavior& a, const Behavior& b) {
    if (a.status != b.status) return true;
    if (a.status == RunStatus::Returned && a.value != b.value) return true;
    if (a.status == RunStatus::RuntimeError && a.error != b.error) return true;
    return false;
}

EvidenceReport amplify(const Program& original, const Program& patched,
                       const Program* reference, const TestSuite& suite,
                       const EvidenceConfig& cfg) {
    EvidenceReport report;
    std::size_t arity = patched.params.size();

    // rng() % span keeps the draw sequence identical across platforms,
    // unlike the distribution adapters.
    std::mt19937_64 rng(cfg.seed);
    std::uint64_t span = static_cast<std::uint64_t>(cfg.hi - cfg.lo) + 1;
    std::vector<std::vector<std::int64_t>> inputs;
    for (int n = 0; n < cfg.random_probes; ++n) {
        std::vector<std::int64_t> tuple(arity);
        for (std::size_t j = 0; j < arity; ++j)
            tuple[j] = cfg.lo + static_cast<std::int64_t>(rng() % span);
        inputs.push_back(std::move(tuple));
    }
    if (arity <= 12) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << arity); ++mask) {
            std::vector<std::int64_t> tuple(arity);
            for (std::size_t j = 0; j < arity; ++j)
                tuple[j] = (mask >> j) & 1 ? cfg.hi : cfg.lo;
            inputs.push_back(std::move(tuple));
        }
    }
    std::set<std::vector<std::int64_t>> dedup;
    int diff_count = 0;
    int agree_index = 0;
    for (const auto& tuple : inputs) {
        if (!dedup.insert(tuple).second) continue;
        Behavior orig = behavior_of(original, tuple);
        Behavior pat = behavior_of(patched, tuple);
        bool differ = behaviors_differ(orig, pat);
        AmplifiedTest t;
        t.inputs = tuple;
        t.original = orig;
        t.patched = pat;
        if (differ) {
            t.kind = AmpKind::DifferenceRevealing;
            char buf[32];
            std::snprintf(buf, sizeof buf, "amp_diff_%03d", diff_count);
            t.name = buf;
            ++diff_count;
        } else {
            bool keep = agree_index % cfg.keep_every == 0;
            ++agree_index;
            if (!keep) continue;
            t.kind = AmpKind::Agreeing;
            char buf[32];
            std::snprintf(buf, sizeof buf, "amp_probe_%03d",
                          report.agreeing_kept);
            t.name = buf;
        }
        // Deterministic execution makes replay a re-run; the classification
        // must reproduce.
        Behavior orig2 = behavior_of(original, tuple);
        Behavior pat2 = behavior_of(patched, tuple);
        t.replay_verified = !behaviors_differ(orig, orig2) &&
                            !behaviors_differ(pat, pat2) &&
                            behaviors_differ(orig2, pat2) == differ;
        if (reference) {
            Behavior ref = behavior_of(*reference, tuple);
            if (ref.status == RunStatus::Returned) {
                t.has_oracle = true;
                t.expected = ref.value;
            }
        }
        if (t.kind == AmpKind::DifferenceRevealing)
            ++report.difference_revealing;
        else
            ++report.agreeing_kept;
        report.tests.push_back(std::move(t));
    }

    report.patched_passes_given = run_cases(patched, suite.tests).all_passed();
    report.patched_passes_oracled = true;
    for (const AmplifiedTest& t : report.tests) {
        if (!t.has_oracle) continue;
        if (t.patched.status != RunStatus::Returned ||
            t.patched.value != t.expected)
            report.patched_passes_oracled = false;
    }
    return report;
}

TestSuite amplified_suite(const EvidenceReport& report, const std::string& function) {
    TestSuite s;
    s.function = function;
    for (const AmplifiedTest& t : report.tests) {
        if (!t.has_oracle) continue;
        TestCase c;
        c.name = t.name;
        c.inputs = t.inputs;
        c.expected = t.expected;
        s.tests.push_back(std::move(c));
    }
    return s;
}

namespace {

nlohmann::json behavior_to_json(const Behavior& b) {
    nlohmann::json j;
    j["status"] = run_status_name(b.status);
    if (b.status == RunStatus::Returned) j["value"] = b.value;
    if (b.status == RunStatus::RuntimeError) j["error"] = error_kind_name(b.error);
    return j;
}

}  // namespace

nlohmann::json evidence_to_json(const EvidenceReport& report) {
    nlohmann::json j;
    j["difference_revealing"] = report.difference_revealing;
    j["agreeing_kept"] = report.agreeing_kept;
    j["patched_passes_given"] = report.patched_passes_given;
    j["patched_passes_oracled"] = report.patched_passes_oracled;
    nlohmann::json tests = nlohmann::json::array();
    for (const AmplifiedTest& t : report.tests) {
        nlohmann::json jt;
        jt["name"] = t.name;
        jt["inputs"] = t.inputs;
        jt["kind"] = t.kind == AmpKind::DifferenceRevealing ? "difference-revealing"
                                                            : "agreeing";
        jt["original"] = behavior_to_json(t.original);
        jt["patched"] = behavior_to_json(t.patched);
        jt["replay_verified"] = t.replay_verified;
        if (t.has_oracle) jt["expected"] = t.expected;
        tests.push_back(std::move(jt));
    }
    j["tests"] = std::move(tests);
    return j;
}

const char* overfit_verdict_name(OverfitVerdict v) {
    switch (v) {
        case OverfitVerdict::Overfitting: return "overfitting";
        case OverfitVerdict::NotOverfitting: return "not-overfitting";
        case OverfitVerdict::InvalidPatch: return "invalid-patch";
    }
    return "?";
}

OverfitReport overfit_check(const Program& patched, const TestSuite& suite) {
    if (suite.held_out.empty())
        throw NoHeldOutTests("suite has no held-out tests");
    OverfitReport report;
    report.train = run_cases(patched, suite.tests);
    report.held_out = run_cases(patched, suite.held_out);
    for (const CaseOutcome& o : report.held_out.outcomes)
        if (!o.passed) report.failing_held_out.push_back(o.name);
    if (!report.train.all_passed())
        report.verdict = OverfitVerdict::InvalidPatch;
    else if (!report.held_out.all_passed())
        report.verdict = OverfitVerdict::Overfitting;
    else
        report.verdict = OverfitVerdict::NotOverfitting;
    return report;
}

nlohmann::json overfit_to_json(const OverfitReport& report) {
    nlohmann::json j;
    j["verdict"] = overfit_verdict_name(report.verdict);
    auto outcomes = [](const SuiteResult& r) {
        nlohmann::json out = nlohmann::json::array();
        for (const CaseOutcome& o : r.outcomes) {
            nlohmann::json jo;
            jo["name"] = o.name;
            jo["passed"] = o.passed;
            jo["expected"] = o.expected;
            jo["status"] = run_status_name(o.run.status);
            if (o.run.status == RunStatus::Returned) jo["value"] = o.run.value;
            if (o.run.status == RunStatus::RuntimeError)
                jo["error"] = error_kind_name(o.run.error);
            out.push_back(std::move(jo));
        }
        return out;
    };
    j["tests"] = outcomes(report.train);
    j["held_out"] = outcomes(report.held_out);
    j["failing_held_out"] = report.failing_held_out;
    return j;
}

}  // namespace repairforge
