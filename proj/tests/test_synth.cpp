#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "repairforge/minilang.hpp"
#include "repairforge/synth.hpp"
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

RepairConstraint build(const Loaded& l, int line,
                       std::vector<std::int64_t> pool,
                       long max_replays = 200000) {
    AngelicBounds bounds;
    bounds.max_replays = max_replays;
    return build_repair_constraint(*l.program, l.suite.tests,
                                   location_at(*l.program, line), pool, bounds);
}

// Constraints used across several cases, built once.
const RepairConstraint& triangle6() {
    static RepairConstraint c =
        build(load("triangle.mlg", "triangle.tests.json"), 6, {0, 1});
    return c;
}

const RepairConstraint& triangle8() {
    static RepairConstraint c =
        build(load("triangle.mlg", "triangle.tests.json"), 8, {0, 1});
    return c;
}

std::vector<std::int64_t> wide_pool() {
    std::vector<std::int64_t> pool;
    for (std::int64_t v = -10; v <= 10; ++v) pool.push_back(v);
    return pool;
}

std::vector<std::string> printed(const std::vector<ExprPtr>& es,
                                 std::size_t limit) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < es.size() && i < limit; ++i)
        out.push_back(print_expression(es[i]));
    return out;
}

}  // namespace

TEST_CASE("component defaults depend on the slot type") {
    ComponentSet b = default_components(triangle6(), false);
    CHECK(b.variables == std::vector<std::string>{"a", "b", "c"});
    CHECK(b.constants == std::vector<std::int64_t>{0, 1});
    CHECK(b.cmp_ops == std::vector<BinaryOp>{BinaryOp::Eq, BinaryOp::Ne});
    CHECK(b.logic_ops == std::vector<BinaryOp>{BinaryOp::And, BinaryOp::Or});
    CHECK(b.int_ops.empty());
    CHECK(b.int_unary.empty());
    CHECK(b.bool_unary.empty());

    ComponentSet i = default_components(triangle8(), false);
    CHECK(i.int_unary == std::vector<UnaryOp>{UnaryOp::Neg});
    CHECK(i.int_ops ==
          std::vector<BinaryOp>{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul});
    CHECK(i.cmp_ops.empty());
    CHECK(i.logic_ops.empty());

    ComponentSet d = default_components(triangle8(), true);
    CHECK(d.int_ops ==
          std::vector<BinaryOp>{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                BinaryOp::Div, BinaryOp::Mod});

    RepairConstraint dups = triangle8();
    dups.constant_pool = {3, 1, 3, 0};
    ComponentSet cleaned = default_components(dups, false);
    CHECK(cleaned.constants == std::vector<std::int64_t>{0, 1, 3});
}

TEST_CASE("the isosceles condition is the smallest repair at size eleven") {
    SynthResult r = synthesize(triangle6(), default_components(triangle6(), false),
                               SynthLimits{});
    REQUIRE(r.status == SynthStatus::Found);
    CHECK(print_expression(r.expr) == "a == b || b == c || a == c");
    CHECK(r.size == 11);
    CHECK(expr_size(r.expr) == 11);
    CHECK(r.visits == 184);
    CHECK_FALSE(r.capped);
    CHECK(check_candidate(triangle6(), r.expr));
}

TEST_CASE("the squaring expression is found at size three") {
    Loaded l = load("square.mlg", "square.tests.json");
    for (int line : {2, 3}) {
        CAPTURE(line);
        RepairConstraint c = build(l, line, {0, 1});
        SynthResult r =
            synthesize(c, default_components(c, false), SynthLimits{});
        REQUIRE(r.status == SynthStatus::Found);
        CHECK(print_expression(r.expr) == "input * input");
        CHECK(r.size == 3);
    }
}

TEST_CASE("the loop step repair is found at size three") {
    Loaded l = load("sum_to.mlg", "sum_to.tests.json");
    RepairConstraint c = build(l, 6, {0, 1, 2}, 50000);
    SynthResult r = synthesize(c, default_components(c, false), SynthLimits{});
    REQUIRE(r.status == SynthStatus::Found);
    CHECK(print_expression(r.expr) == "i + 1");
    CHECK(r.size == 3);
}

TEST_CASE("a wide constant pool admits a smaller overfitted repair") {
    Loaded l = load("triangle.mlg", "triangle.tests.json");
    RepairConstraint c = build(l, 6, wide_pool());
    SynthResult r = synthesize(c, default_components(c, false), SynthLimits{});
    REQUIRE(r.status == SynthStatus::Found);
    CHECK(print_expression(r.expr) == "c != 4");
    CHECK(r.size == 3);
    CHECK(check_candidate(c, r.expr));
}

TEST_CASE("ordering comparisons change the smallest repair") {
    ComponentSet comps;
    comps.variables = {"a", "b", "c"};
    comps.constants = {0, 1};
    comps.cmp_ops = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt, BinaryOp::Le};
    comps.logic_ops = {BinaryOp::And, BinaryOp::Or};
    SynthResult r = synthesize(triangle6(), comps, SynthLimits{});
    REQUIRE(r.status == SynthStatus::Found);
    CHECK(print_expression(r.expr) == "b <= a || c <= a");
    CHECK(r.size == 7);
    CHECK(r.visits == 186);
    CHECK(check_candidate(triangle6(), r.expr));
}

TEST_CASE("no arithmetic expression settles the return slot") {
    SynthResult r = synthesize(triangle8(), default_components(triangle8(), false),
                               SynthLimits{});
    CHECK(r.status == SynthStatus::Exhausted);
    CHECK_FALSE(r.capped);
    CHECK(r.visits == 104460);
}

TEST_CASE("the visit budget caps the search") {
    SynthLimits limits;
    limits.max_visits = 50;
    SynthResult r =
        synthesize(triangle6(), default_components(triangle6(), false), limits);
    CHECK(r.status == SynthStatus::Exhausted);
    CHECK(r.capped);
    CHECK(r.visits == 51);
}

TEST_CASE("synthesis is deterministic") {
    ComponentSet comps = default_components(triangle6(), false);
    SynthResult a = synthesize(triangle6(), comps, SynthLimits{});
    SynthResult b = synthesize(triangle6(), comps, SynthLimits{});
    REQUIRE(a.status == SynthStatus::Found);
    REQUIRE(b.status == SynthStatus::Found);
    CHECK(print_expression(a.expr) == print_expression(b.expr));
    CHECK(a.visits == b.visits);
    CHECK(a.size == b.size);
}

TEST_CASE("enumeration order starts with diagonal comparisons") {
    ComponentSet tiny;
    tiny.variables = {"a", "b"};
    tiny.cmp_ops = {BinaryOp::Eq};
    std::vector<ExprPtr> es = enumerate_expressions(tiny, ValueType::Bool, 3);
    CHECK(printed(es, es.size()) ==
          std::vector<std::string>{"a == a", "b == b", "a == b"});

    std::vector<ExprPtr> first =
        enumerate_expressions(default_components(triangle6(), false),
                              ValueType::Bool, 3);
    CHECK(printed(first, 12) ==
          std::vector<std::string>{"a == a", "b == b", "c == c", "0 == 0",
                                   "1 == 1", "a == b", "b == c", "c == 0",
                                   "0 == 1", "a == c", "b == 0", "c == 1"});
}

TEST_CASE("enumeration size ordering and construction cap") {
    ComponentSet comps = default_components(triangle8(), false);
    std::vector<ExprPtr> es = enumerate_expressions(comps, ValueType::Int, 5);
    int last = 0;
    for (const ExprPtr& e : es) {
        CHECK(expr_size(e) >= last);
        last = expr_size(e);
        CHECK(e->type == ValueType::Int);
    }
    CHECK(expr_size(es.front()) == 1);
    CHECK(expr_size(es.back()) == 5);

    CHECK_THROWS_AS(enumerate_expressions(comps, ValueType::Int, 11, 100),
                    std::length_error);
}

TEST_CASE("a found patch is minimal against brute-force enumeration") {
    struct Entry {
        const char* program;
        const char* suite;
        int line;
        std::vector<std::int64_t> pool;
        long max_replays;
    };
    const Entry entries[] = {
        {"triangle.mlg", "triangle.tests.json", 6, {0, 1}, 200000},
        {"triangle.mlg", "triangle.tests.json", 8, {0, 1}, 200000},
        {"square.mlg", "square.tests.json", 2, {0, 1}, 200000},
        {"square.mlg", "square.tests.json", 3, {0, 1}, 200000},
        {"sum_to.mlg", "sum_to.tests.json", 5, {0, 1, 2}, 50000},
        {"sum_to.mlg", "sum_to.tests.json", 6, {0, 1, 2}, 50000},
        {"normalize.mlg", "normalize.tests.json", 2, {0, 1, 10, 100}, 200000},
    };
    for (const Entry& entry : entries) {
        CAPTURE(entry.program);
        CAPTURE(entry.line);
        Loaded l = load(entry.program, entry.suite);
        RepairConstraint c = build(l, entry.line, entry.pool,
                                   entry.max_replays);
        ComponentSet comps = default_components(c, false);

        ExprPtr first;
        for (const ExprPtr& e :
             enumerate_expressions(comps, c.value_kind, 7)) {
            if (check_candidate(c, e)) {
                first = e;
                break;
            }
        }

        SynthLimits limits;
        limits.max_size = 7;
        SynthResult r = synthesize(c, comps, limits);
        if (first) {
            REQUIRE(r.status == SynthStatus::Found);
            CHECK(r.size == expr_size(first));
            CHECK(print_expression(r.expr) == print_expression(first));
            CHECK(check_candidate(c, r.expr));
        } else {
            CHECK(r.status == SynthStatus::Exhausted);
        }
    }
}
