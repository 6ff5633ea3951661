#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "repairforge/minilang.hpp"
#include "repairforge/suite.hpp"

namespace repairforge {

struct AngelicBounds {
    int max_evals = 12;          // forced evaluations per run
    int max_paths = 64;          // passing scripts kept per test
    long max_replays = 200000;   // runs per (location, test)
    long long max_replay_steps = 20000000;  // summed steps per (location, test)
};

// One way a test passes: force the slot to `forced[j]` at the j-th
// evaluation, observed under the variable snapshot `records[j]`.
struct AngelicPath {
    std::vector<EvalRecord> records;
    std::vector<Value> forced;
};

struct AngelicForest {
    std::string test_name;
    std::vector<AngelicPath> paths;
};

// Conjunction over tests of a disjunction over paths: a replacement
// expression repairs the location if every forest holds a path whose forced
// values the expression reproduces pointwise.
struct RepairConstraint {
    FixLocation location;
    ValueType value_kind = ValueType::Bool;
    std::map<std::string, std::int64_t> constants;
    std::vector<std::int64_t> constant_pool;
    std::vector<AngelicForest> forests;        // suite order, reached tests only
    std::vector<std::string> unreached_tests;  // never evaluate the slot, pass as-is
};

// A failing test that never evaluates the slot cannot be fixed there.
struct InfeasibleLocation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Candidate forced values for an integer slot on this test: a small signed
// band plus the test's inputs, expected output, declared constants, and
// pairwise sums and products of inputs. Sorted, deduplicated.
std::vector<std::int64_t> integer_domain(const Program& p, const TestCase& t);

struct ForestResult {
    enum class Kind { Reached, UnreachedPassing, UnreachedFailing };
    Kind kind = Kind::Reached;
    AngelicForest forest;   // Reached only
    bool truncated = false; // a bound stopped the search; paths may be missing
};

// Breadth-first search over forced-value scripts, shortest first. Every
// returned path replays deterministically: forcing its values in order makes
// the test pass.
ForestResult collect_forest(const Program& p, const TestCase& t,
                            const FixLocation& loc, const AngelicBounds& bounds);

RepairConstraint build_repair_constraint(const Program& p,
                                         const std::vector<TestCase>& tests,
                                         const FixLocation& loc,
                                         const std::vector<std::int64_t>& pool,
                                         const AngelicBounds& bounds);

// True when the expression reproduces a full passing path of every forest.
bool check_candidate(const RepairConstraint& c, const ExprPtr& candidate);

nlohmann::json constraint_to_json(const RepairConstraint& c);
RepairConstraint constraint_from_json(const nlohmann::json& j);

}  // namespace repairforge
