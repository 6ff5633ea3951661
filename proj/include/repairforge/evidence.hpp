#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "repairforge/minilang.hpp"
#include "repairforge/suite.hpp"

namespace repairforge {

struct EvidenceConfig {
    std::uint64_t seed = 0xC0FFEE;
    std::int64_t lo = -2;
    std::int64_t hi = 10;
    int random_probes = 400;
    int keep_every = 20;  // sampling stride over agreeing inputs
};

enum class AmpKind { DifferenceRevealing, Agreeing };

struct Behavior {
    RunStatus status = RunStatus::Returned;
    std::int64_t value = 0;      // Returned
    ErrorKind error = ErrorKind::NoReturn;  // RuntimeError
};

Behavior behavior_of(const Program& p, const std::vector<std::int64_t>& inputs);
bool behaviors_differ(const Behavior& a, const Behavior& b);

struct AmplifiedTest {
    std::string name;  // amp_diff_### / amp_probe_###
    std::vector<std::int64_t> inputs;
    AmpKind kind = AmpKind::Agreeing;
    Behavior original;
    Behavior patched;
    bool replay_verified = false;  // re-run reproduced the classification
    bool has_oracle = false;       // reference returned normally
    std::int64_t expected = 0;
};

struct EvidenceReport {
    std::vector<AmplifiedTest> tests;
    int difference_revealing = 0;
    int agreeing_kept = 0;
    bool patched_passes_given = false;    // the suite's tests
    bool patched_passes_oracled = false;  // amplified tests with an oracle
};

// Probes original and patched on seeded random inputs within [lo, hi] plus
// every lo/hi corner combination, deduplicated in draw order. Inputs where
// the two behaviors differ become difference-revealing tests; a sampled
// slice of agreeing inputs is kept as probes. The reference, when given,
// supplies expected outputs.
EvidenceReport amplify(const Program& original, const Program& patched,
                       const Program* reference, const TestSuite& suite,
                       const EvidenceConfig& cfg);

// Oracled amplified tests as a loadable suite.
TestSuite amplified_suite(const EvidenceReport& report, const std::string& function);

nlohmann::json evidence_to_json(const EvidenceReport& report);

enum class OverfitVerdict { Overfitting, NotOverfitting, InvalidPatch };

const char* overfit_verdict_name(OverfitVerdict v);

struct NoHeldOutTests : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverfitReport {
    OverfitVerdict verdict = OverfitVerdict::NotOverfitting;
    SuiteResult train;
    SuiteResult held_out;
    std::vector<std::string> failing_held_out;
};

// Overfitting: the program passes every given test yet fails held-out ones.
// A program failing the given tests is InvalidPatch. Throws NoHeldOutTests
// when the suite has no held-out cases to audit against.
OverfitReport overfit_check(const Program& patched, const TestSuite& suite);

nlohmann::json overfit_to_json(const OverfitReport& report);

}  // namespace repairforge
