#include <algorithm>
#include <deque>
#include <set>

#include "repairforge/symexec.hpp"

namespace repairforge {

std::vector<std::int64_t> integer_domain(const Program& p, const TestCase& t) {
    std::set<std::int64_t> dom;
    for (std::int64_t v = -8; v <= 8; ++v) dom.insert(v);
    for (std::int64_t v : t.inputs) dom.insert(v);
    dom.insert(t.expected);
    for (const auto& [name, value] : p.constants) dom.insert(value);
    for (std::size_t i = 0; i < t.inputs.size(); ++i)
        for (std::size_t j = i; j < t.inputs.size(); ++j) {
            dom.insert(t.inputs[i] + t.inputs[j]);
            dom.insert(t.inputs[i] * t.inputs[j]);
        }
    return {dom.begin(), dom.end()};
}

ForestResult collect_forest(const Program& p, const TestCase& t,
                            const FixLocation& loc, const AngelicBounds& bounds) {
    ForestResult out;
    out.forest.test_name = t.name;

    Probe probe;
    probe.line = loc.line;
    probe.live_vars = loc.live_vars;

    bool bool_slot = loc.kind == LocationKind::BranchCondition;
    std::vector<Value> domain;
    if (bool_slot) {
        domain = {Value::of_bool(false), Value::of_bool(true)};
    } else {
        for (std::int64_t v : integer_domain(p, t)) domain.push_back(Value::of_int(v));
    }

    long replays = 0;
    long long steps = 0;
    std::deque<std::vector<Value>> queue;
    queue.push_back({});
    bool first = true;
    while (!queue.empty()) {
        if (replays >= bounds.max_replays || steps >= bounds.max_replay_steps) {
            out.truncated = true;
            break;
        }
        std::vector<Value> script = std::move(queue.front());
        queue.pop_front();
        probe.script = script;
        RunResult res = run_program(p, t.inputs, &probe);
        ++replays;
        steps += static_cast<long long>(res.steps);
        bool was_first = first;
        first = false;

        if (res.status == RunStatus::ProbeStarved) {
            if (res.consumed != script.size()) continue;
            if (was_first) out.kind = ForestResult::Kind::Reached;
            if (static_cast<int>(script.size()) == bounds.max_evals) {
                out.truncated = true;
            } else {
                for (const Value& v : domain) {
                    std::vector<Value> child = script;
                    child.push_back(v);
                    queue.push_back(std::move(child));
                }
            }
        } else if (res.consumed == script.size()) {
            bool passed =
                res.status == RunStatus::Returned && res.value == t.expected;
            if (was_first) {
                // The empty script runs the program untouched, so the slot
                // was never evaluated on this input under any script.
                out.kind = passed ? ForestResult::Kind::UnreachedPassing
                                  : ForestResult::Kind::UnreachedFailing;
                return out;
            }
            if (passed) {
                if (static_cast<int>(out.forest.paths.size()) >= bounds.max_paths) {
                    out.truncated = true;
                    break;
                }
                AngelicPath path;
                path.records = res.records;
                path.forced = script;
                out.forest.paths.push_back(std::move(path));
            }
        }
    }
    return out;
}

RepairConstraint build_repair_constraint(const Program& p,
                                         const std::vector<TestCase>& tests,
                                         const FixLocation& loc,
                                         const std::vector<std::int64_t>& pool,
                                         const AngelicBounds& bounds) {
    RepairConstraint c;
    c.location = loc;
    c.value_kind = loc.kind == LocationKind::BranchCondition ? ValueType::Bool
                                                             : ValueType::Int;
    c.constants = constants_map(p);
    c.constant_pool = pool;
    for (const TestCase& t : tests) {
        ForestResult fr = collect_forest(p, t, loc, bounds);
        switch (fr.kind) {
            case ForestResult::Kind::Reached:
                c.forests.push_back(std::move(fr.forest));
                break;
            case ForestResult::Kind::UnreachedPassing:
                c.unreached_tests.push_back(t.name);
                break;
            case ForestResult::Kind::UnreachedFailing:
                throw InfeasibleLocation("test '" + t.name +
                                         "' fails without evaluating line " +
                                         std::to_string(loc.line));
        }
    }
    return c;
}

bool check_candidate(const RepairConstraint& c, const ExprPtr& candidate) {
    if (!candidate || candidate->type != c.value_kind) return false;
    for (const AngelicForest& forest : c.forests) {
        bool any = false;
        for (const AngelicPath& path : forest.paths) {
            bool all = true;
            for (std::size_t j = 0; j < path.records.size(); ++j) {
                EvalOutcome out =
                    eval_in_env(candidate, path.records[j].env, c.constants);
                if (!out.ok || out.value != path.forced[j]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                any = true;
                break;
            }
        }
        if (!any) return false;
    }
    return true;
}

nlohmann::json constraint_to_json(const RepairConstraint& c) {
    nlohmann::json j;
    j["location"] = {{"line", c.location.line},
                     {"kind", location_kind_name(c.location.kind)},
                     {"live_vars", c.location.live_vars}};
    j["value_kind"] = c.value_kind == ValueType::Bool ? "bool" : "int";
    j["constants"] = c.constants;
    j["constant_pool"] = c.constant_pool;
    j["unreached_tests"] = c.unreached_tests;
    nlohmann::json forests = nlohmann::json::array();
    for (const AngelicForest& f : c.forests) {
        nlohmann::json jf;
        jf["test"] = f.test_name;
        nlohmann::json paths = nlohmann::json::array();
        for (const AngelicPath& path : f.paths) {
            nlohmann::json evals = nlohmann::json::array();
            for (std::size_t k = 0; k < path.records.size(); ++k) {
                nlohmann::json e;
                e["line"] = path.records[k].line;
                e["env"] = path.records[k].env;
                if (c.value_kind == ValueType::Bool)
                    e["forced"] = path.forced[k].b;
                else
                    e["forced"] = path.forced[k].i;
                evals.push_back(std::move(e));
            }
            paths.push_back({{"evals", std::move(evals)}});
        }
        jf["paths"] = std::move(paths);
        forests.push_back(std::move(jf));
    }
    j["forests"] = std::move(forests);
    return j;
}

RepairConstraint constraint_from_json(const nlohmann::json& j) {
    RepairConstraint c;
    const auto& loc = j.at("location");
    c.location.line = loc.at("line").get<int>();
    c.location.kind = location_kind_from_name(loc.at("kind").get<std::string>());
    c.location.live_vars = loc.at("live_vars").get<std::vector<std::string>>();
    c.value_kind =
        j.at("value_kind").get<std::string>() == "bool" ? ValueType::Bool
                                                        : ValueType::Int;
    c.constants = j.at("constants").get<std::map<std::string, std::int64_t>>();
    c.constant_pool = j.at("constant_pool").get<std::vector<std::int64_t>>();
    c.unreached_tests = j.at("unreached_tests").get<std::vector<std::string>>();
    for (const auto& jf : j.at("forests")) {
        AngelicForest f;
        f.test_name = jf.at("test").get<std::string>();
        for (const auto& jp : jf.at("paths")) {
            AngelicPath path;
            for (const auto& je : jp.at("evals")) {
                EvalRecord rec;
                rec.line = je.at("line").get<int>();
                rec.env =
                    je.at("env").get<std::map<std::string, std::int64_t>>();
                path.records.push_back(std::move(rec));
                if (c.value_kind == ValueType::Bool)
                    path.forced.push_back(Value::of_bool(je.at("forced").get<bool>()));
                else
                    path.forced.push_back(
                        Value::of_int(je.at("forced").get<std::int64_t>()));
            }
            f.paths.push_back(std::move(path));
        }
        c.forests.push_back(std::move(f));
    }
    return c;
}

}  // namespace repairforge
