#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "repairforge/faultloc.hpp"

namespace repairforge {

const char* formula_name(Formula f) {
    return f == Formula::Ochiai ? "ochiai" : "tarantula";
}

Formula formula_from_name(const std::string& s) {
    if (s == "ochiai") return Formula::Ochiai;
    if (s == "tarantula") return Formula::Tarantula;
    throw std::invalid_argument("unknown formula '" + s + "'");
}

Localization localize(const Program& p, const std::vector<TestCase>& tests,
                      Formula formula) {
    Localization loc;
    struct Counts {
        int ef = 0;
        int ep = 0;
    };
    std::map<int, Counts> by_line;
    for (const TestCase& t : tests) {
        CaseOutcome out = run_case(p, t);
        if (out.passed)
            ++loc.total_passed;
        else {
            ++loc.total_failed;
            loc.failing_tests.push_back(t.name);
        }
        for (int line : out.run.coverage) {
            Counts& c = by_line[line];
            if (out.passed)
                ++c.ep;
            else
                ++c.ef;
        }
    }
    double F = loc.total_failed;
    double P = loc.total_passed;
    for (const auto& [line, c] : by_line) {
        LineScore s;
        s.line = line;
        s.ef = c.ef;
        s.ep = c.ep;
        if (c.ef > 0) {
            if (formula == Formula::Ochiai) {
                s.score = c.ef / std::sqrt(F * (c.ef + c.ep));
            } else {
                double fail_rate = c.ef / F;
                double pass_rate = P > 0 ? c.ep / P : 0.0;
                s.score = fail_rate / (fail_rate + pass_rate);
            }
        }
        loc.ranking.push_back(s);
    }
    std::stable_sort(loc.ranking.begin(), loc.ranking.end(),
                     [](const LineScore& a, const LineScore& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.line > b.line;
                     });
    return loc;
}

std::vector<int> top_lines(const Localization& loc, int k) {
    std::vector<int> out;
    for (const LineScore& s : loc.ranking) {
        if (static_cast<int>(out.size()) >= k) break;
        out.push_back(s.line);
    }
    return out;
}

}  // namespace repairforge
