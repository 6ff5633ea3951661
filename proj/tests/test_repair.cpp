#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "repairforge/minilang.hpp"
#include "repairforge/repair.hpp"
#include "test_util.hpp"

using namespace repairforge;

namespace {

struct Loaded {
    ProgramPtr program;
    TestSuite suite;
};

Loaded load(const std::string& program, const std::string& suite) {
    Loaded out;
    out.program = parse_program(read_file(corpus_path(program)));
    out.suite = load_suite(corpus_path(suite), *out.program);
    return out;
}

std::vector<int> attempt_lines(const RepairOutcome& out) {
    std::vector<int> lines;
    for (const RepairAttempt& a : out.attempts) lines.push_back(a.line);
    return lines;
}

}  // namespace

TEST_CASE("the triangle bug is repaired at the isosceles condition") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairOutcome out = repair_program(*l.program, l.suite, RepairConfig{});

    REQUIRE(out.status == RepairStatus::Repaired);
    REQUIRE(out.attempts.size() == 2);
    CHECK(out.attempts[0].line == 8);
    CHECK(out.attempts[0].status == AttemptStatus::SynthesisExhausted);
    CHECK_FALSE(out.attempts[0].capped);
    CHECK(out.attempts[0].visits == 104460);
    CHECK(out.attempts[1].line == 6);
    CHECK(out.attempts[1].status == AttemptStatus::Accepted);
    CHECK(out.attempts[1].visits == 184);

    CHECK(out.patch.location.line == 6);
    CHECK(out.patch.location.kind == LocationKind::BranchCondition);
    CHECK(print_expression(out.patch.original) == "a == b || b == c");
    CHECK(print_expression(out.patch.replacement) ==
          "a == b || b == c || a == c");

    REQUIRE(out.repaired != nullptr);
    CHECK(run_cases(*out.repaired, l.suite.tests).all_passed());
    CHECK(run_cases(*out.repaired, l.suite.held_out).all_passed());
    CHECK(count_differing_statement_exprs(*l.program, *out.repaired) == 1);

    std::vector<int> ranked;
    for (const LineScore& s : out.localization.ranking) ranked.push_back(s.line);
    CHECK(ranked == std::vector<int>{8, 6, 4, 2, 7, 5, 3});
    CHECK(out.pool == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("a wide constant pool admits an overfitted repair") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairConfig cfg;
    cfg.unrestricted_constants = true;
    RepairOutcome out = repair_program(*l.program, l.suite, cfg);

    REQUIRE(out.status == RepairStatus::Repaired);
    REQUIRE(out.attempts.size() == 2);
    CHECK(out.attempts[0].line == 8);
    CHECK(out.attempts[0].status == AttemptStatus::SynthesisExhausted);
    CHECK(out.attempts[0].capped);
    CHECK(out.attempts[0].visits == 3000001);
    CHECK(out.attempts[1].line == 6);
    CHECK(out.attempts[1].status == AttemptStatus::Accepted);
    CHECK(print_expression(out.patch.replacement) == "c != 4");

    REQUIRE(out.repaired != nullptr);
    CHECK(run_cases(*out.repaired, l.suite.tests).all_passed());
    SuiteResult held = run_cases(*out.repaired, l.suite.held_out);
    CHECK_FALSE(held.all_passed());
    CHECK(held.failed == 2);
    CHECK(count_differing_statement_exprs(*l.program, *out.repaired) == 1);
    CHECK(out.pool.size() == 21);
    CHECK(out.pool.front() == -10);
    CHECK(out.pool.back() == 10);
}

TEST_CASE("already passing programs are left untouched") {
    for (const char* name : {"abs_value", "max3"}) {
        CAPTURE(name);
        Loaded l = load(std::string(name) + ".mlg",
                        std::string(name) + ".tests.json");
        RepairOutcome out = repair_program(*l.program, l.suite, RepairConfig{});
        CHECK(out.status == RepairStatus::AlreadyPassing);
        CHECK(out.attempts.empty());
        CHECK(out.repaired == nullptr);
        CHECK(out.localization.ranking.empty());
        CHECK(out.pool.empty());
    }
}

TEST_CASE("the loop increment bug is repaired") {
    Loaded l = load("sum_to.mlg", "sum_to.tests.json");
    RepairConfig cfg;
    cfg.bounds.max_replays = 50000;
    RepairOutcome out = repair_program(*l.program, l.suite, cfg);

    REQUIRE(out.status == RepairStatus::Repaired);
    REQUIRE(out.attempts.size() == 1);
    CHECK(out.attempts[0].line == 6);
    CHECK(out.attempts[0].status == AttemptStatus::Accepted);
    CHECK(out.patch.location.kind == LocationKind::AssignmentRhs);
    CHECK(print_expression(out.patch.original) == "i + 2");
    CHECK(print_expression(out.patch.replacement) == "i + 1");
    REQUIRE(out.repaired != nullptr);
    CHECK(run_cases(*out.repaired, l.suite.tests).all_passed());
    CHECK(run_cases(*out.repaired, l.suite.held_out).all_passed());
    CHECK(count_differing_statement_exprs(*l.program, *out.repaired) == 1);
}

TEST_CASE("no repair is claimed when every location fails") {
    Loaded l = load("normalize.mlg", "normalize.tests.json");
    RepairOutcome out = repair_program(*l.program, l.suite, RepairConfig{});

    CHECK(out.status == RepairStatus::NoPatchFound);
    CHECK(out.repaired == nullptr);
    REQUIRE(out.attempts.size() == 5);
    CHECK(attempt_lines(out) == std::vector<int>{2, 7, 5, 4, 3});
    CHECK(out.attempts[0].status == AttemptStatus::SynthesisExhausted);
    CHECK_FALSE(out.attempts[0].capped);
    for (std::size_t i = 1; i < out.attempts.size(); ++i) {
        CAPTURE(i);
        CHECK(out.attempts[i].status == AttemptStatus::Infeasible);
        CHECK(out.attempts[i].detail.find("fails without evaluating") !=
              std::string::npos);
    }
}

TEST_CASE("only the top ranked locations are attempted") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairConfig cfg;
    cfg.top_k = 1;
    RepairOutcome out = repair_program(*l.program, l.suite, cfg);
    CHECK(out.status == RepairStatus::NoPatchFound);
    REQUIRE(out.attempts.size() == 1);
    CHECK(out.attempts[0].line == 8);
    CHECK(out.attempts[0].status == AttemptStatus::SynthesisExhausted);
}

TEST_CASE("an exhausted time budget stops before any attempt") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairConfig cfg;
    cfg.budget_total_ms = -1;
    RepairOutcome out = repair_program(*l.program, l.suite, cfg);
    CHECK(out.status == RepairStatus::NoPatchFound);
    CHECK(out.attempts.empty());
    CHECK_FALSE(out.localization.ranking.empty());
}

TEST_CASE("the tarantula formula drives the same triangle repair") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairConfig cfg;
    cfg.formula = Formula::Tarantula;
    RepairOutcome out = repair_program(*l.program, l.suite, cfg);
    REQUIRE(out.status == RepairStatus::Repaired);
    CHECK(out.patch.location.line == 6);
    CHECK(print_expression(out.patch.replacement) ==
          "a == b || b == c || a == c");
}

TEST_CASE("constant pools follow the body literals") {
    auto pool_of = [](const char* name) {
        ProgramPtr p = parse_program(read_file(corpus_path(name)));
        return constant_pool_for(*p, false);
    };
    CHECK(pool_of("triangle.mlg") == std::vector<std::int64_t>{0, 1});
    CHECK(pool_of("square.mlg") == std::vector<std::int64_t>{0, 1});
    CHECK(pool_of("sum_to.mlg") == std::vector<std::int64_t>{0, 1, 2});
    CHECK(pool_of("normalize.mlg") ==
          std::vector<std::int64_t>{0, 1, 10, 100});

    ProgramPtr tri = parse_program(read_file(corpus_path("triangle.mlg")));
    std::vector<std::int64_t> wide = constant_pool_for(*tri, true);
    REQUIRE(wide.size() == 21);
    for (std::size_t i = 0; i < wide.size(); ++i)
        CHECK(wide[i] == static_cast<std::int64_t>(i) - 10);
}

TEST_CASE("status names are stable") {
    CHECK(std::string(repair_status_name(RepairStatus::Repaired)) == "repaired");
    CHECK(std::string(repair_status_name(RepairStatus::AlreadyPassing)) ==
          "already-passing");
    CHECK(std::string(repair_status_name(RepairStatus::NoPatchFound)) ==
          "no-patch-found");
    CHECK(std::string(attempt_status_name(AttemptStatus::Infeasible)) ==
          "infeasible");
    CHECK(std::string(attempt_status_name(AttemptStatus::SynthesisExhausted)) ==
          "synthesis-exhausted");
    CHECK(std::string(attempt_status_name(AttemptStatus::ValidationFailed)) ==
          "validation-failed");
    CHECK(std::string(attempt_status_name(AttemptStatus::Accepted)) ==
          "accepted");
}
