#include <fstream>

#include "repairforge/suite.hpp"

namespace repairforge {

namespace {

TestCase case_from_json(const nlohmann::json& j, const Program& context,
                        const std::map<std::string, std::int64_t>& consts) {
    TestCase t;
    if (!j.is_object() || !j.contains("name") || !j.contains("inputs") ||
        !j.contains("expected"))
        throw SuiteError("each test needs name, inputs, and expected");
    t.name = j.at("name").get<std::string>();
    for (const auto& v : j.at("inputs")) {
        if (!v.is_number_integer())
            throw SuiteError("inputs of '" + t.name + "' must be integers");
        t.inputs.push_back(v.get<std::int64_t>());
    }
    if (t.inputs.size() != context.params.size())
        throw SuiteError("test '" + t.name + "' supplies " +
                         std::to_string(t.inputs.size()) + " inputs for " +
                         std::to_string(context.params.size()) + " parameters");
    const auto& e = j.at("expected");
    if (e.is_number_integer()) {
        t.expected = e.get<std::int64_t>();
    } else if (e.is_string()) {
        auto it = consts.find(e.get<std::string>());
        if (it == consts.end())
            throw SuiteError("test '" + t.name + "' expects unknown constant '" +
                             e.get<std::string>() + "'");
        t.expected = it->second;
    } else {
        throw SuiteError("expected value of '" + t.name +
                         "' must be an integer or a constant name");
    }
    return t;
}

}  // namespace

TestSuite suite_from_json(const nlohmann::json& j, const Program& context) {
    TestSuite s;
    if (!j.is_object() || !j.contains("function") || !j.contains("tests"))
        throw SuiteError("suite needs function and tests");
    s.function = j.at("function").get<std::string>();
    if (s.function != context.function_name)
        throw SuiteError("suite targets '" + s.function + "' but the program defines '" +
                         context.function_name + "'");
    auto consts = constants_map(context);
    for (const auto& t : j.at("tests"))
        s.tests.push_back(case_from_json(t, context, consts));
    if (j.contains("held_out"))
        for (const auto& t : j.at("held_out"))
            s.held_out.push_back(case_from_json(t, context, consts));
    return s;
}

TestSuite load_suite(const std::string& path, const Program& context) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SuiteError("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SuiteError("invalid JSON in " + path + ": " + e.what());
    }
    return suite_from_json(j, context);
}

nlohmann::json suite_to_json(const TestSuite& s) {
    nlohmann::json j;
    j["function"] = s.function;
    auto render = [](const std::vector<TestCase>& cases) {
        nlohmann::json out = nlohmann::json::array();
        for (const TestCase& t : cases) {
            nlohmann::json c;
            c["name"] = t.name;
            c["inputs"] = t.inputs;
            c["expected"] = t.expected;
            out.push_back(std::move(c));
        }
        return out;
    };
    j["tests"] = render(s.tests);
    j["held_out"] = render(s.held_out);
    return j;
}

CaseOutcome run_case(const Program& p, const TestCase& t) {
    CaseOutcome out;
    out.name = t.name;
    out.expected = t.expected;
    out.run = run_program(p, t.inputs);
    out.passed = out.run.status == RunStatus::Returned && out.run.value == t.expected;
    return out;
}

SuiteResult run_cases(const Program& p, const std::vector<TestCase>& cases) {
    SuiteResult res;
    for (const TestCase& t : cases) {
        res.outcomes.push_back(run_case(p, t));
        if (res.outcomes.back().passed)
            ++res.passed;
        else
            ++res.failed;
    }
    return res;
}

}  // namespace repairforge
