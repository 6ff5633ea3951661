#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "repairforge/faultloc.hpp"
#include "repairforge/minilang.hpp"
#include "test_util.hpp"

using namespace repairforge;

namespace {

ProgramPtr parse_corpus(const std::string& name) {
    return parse_program(read_file(corpus_path(name)));
}

TestSuite corpus_suite(const std::string& program, const std::string& suite,
                       ProgramPtr& out) {
    out = parse_corpus(program);
    return load_suite(corpus_path(suite), *out);
}

std::vector<int> ranked_lines(const Localization& loc) {
    std::vector<int> lines;
    for (const LineScore& s : loc.ranking) lines.push_back(s.line);
    return lines;
}

const LineScore& score_of(const Localization& loc, int line) {
    for (const LineScore& s : loc.ranking)
        if (s.line == line) return s;
    static LineScore none;
    REQUIRE(false);
    return none;
}

}  // namespace

TEST_CASE("triangle suspiciousness under the similarity formula") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("triangle.mlg", "triangle.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Ochiai);

    CHECK(loc.total_failed == 1);
    CHECK(loc.total_passed == 5);
    CHECK(loc.failing_tests == std::vector<std::string>{"isosceles_ac"});
    CHECK(ranked_lines(loc) == std::vector<int>{8, 6, 4, 2, 7, 5, 3});

    CHECK(score_of(loc, 8).score ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(score_of(loc, 6).score == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(score_of(loc, 4).score ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
    CHECK(score_of(loc, 2).score ==
          doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-9));
    CHECK(score_of(loc, 7).score == 0.0);
    CHECK(score_of(loc, 5).score == 0.0);
    CHECK(score_of(loc, 3).score == 0.0);

    CHECK(score_of(loc, 8).ef == 1);
    CHECK(score_of(loc, 8).ep == 1);
    CHECK(score_of(loc, 6).ef == 1);
    CHECK(score_of(loc, 6).ep == 3);
    CHECK(score_of(loc, 4).ep == 4);
    CHECK(score_of(loc, 2).ep == 5);
    CHECK(score_of(loc, 7).ef == 0);
    CHECK(score_of(loc, 7).ep == 2);
}

TEST_CASE("triangle suspiciousness under the fraction formula") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("triangle.mlg", "triangle.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Tarantula);

    CHECK(ranked_lines(loc) == std::vector<int>{8, 6, 4, 2, 7, 5, 3});
    CHECK(score_of(loc, 8).score == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
    CHECK(score_of(loc, 6).score == doctest::Approx(0.625).epsilon(1e-9));
    CHECK(score_of(loc, 4).score == doctest::Approx(5.0 / 9.0).epsilon(1e-9));
    CHECK(score_of(loc, 2).score == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(score_of(loc, 3).score == 0.0);
}

TEST_CASE("tied scores rank the later line first") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("square.mlg", "square.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Ochiai);
    CHECK(ranked_lines(loc) == std::vector<int>{3, 2});
    CHECK(score_of(loc, 2).score ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(score_of(loc, 3).score == score_of(loc, 2).score);
}

TEST_CASE("loop body lines rank above the rest in sum_to") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("sum_to.mlg", "sum_to.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Ochiai);
    CHECK(loc.total_failed == 3);
    CHECK(loc.total_passed == 2);
    CHECK(ranked_lines(loc) == std::vector<int>{6, 5, 8, 4, 3, 2});
    double body = 3.0 / std::sqrt(3.0 * 4.0);
    double rest = 3.0 / std::sqrt(3.0 * 5.0);
    CHECK(score_of(loc, 6).score == doctest::Approx(body).epsilon(1e-9));
    CHECK(score_of(loc, 5).score == doctest::Approx(body).epsilon(1e-9));
    CHECK(score_of(loc, 8).score == doctest::Approx(rest).epsilon(1e-9));
    CHECK(score_of(loc, 2).score == doctest::Approx(rest).epsilon(1e-9));
}

TEST_CASE("lines no failing test covers score zero") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("abs_value.mlg", "abs_value.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Ochiai);
    CHECK(loc.total_failed == 0);
    CHECK(ranked_lines(loc) == std::vector<int>{5, 3, 2});
    for (const LineScore& s : loc.ranking) CHECK(s.score == 0.0);
}

TEST_CASE("lines never covered do not appear") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("triangle.mlg", "triangle.tests.json", p);
    std::vector<TestCase> only_scalene{suite.tests[5]};
    Localization loc = localize(*p, only_scalene, Formula::Ochiai);
    CHECK(ranked_lines(loc) == std::vector<int>{8, 6, 4, 2});
}

TEST_CASE("with no passing tests every covered failing line scores one") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("square.mlg", "square.tests.json", p);
    std::vector<TestCase> only_failing{suite.tests[1]};
    for (Formula f : {Formula::Ochiai, Formula::Tarantula}) {
        Localization loc = localize(*p, only_failing, f);
        CHECK(loc.total_passed == 0);
        CHECK(ranked_lines(loc) == std::vector<int>{3, 2});
        CHECK(score_of(loc, 3).score == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(score_of(loc, 2).score == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("top_lines slices the ranking") {
    ProgramPtr p;
    TestSuite suite = corpus_suite("triangle.mlg", "triangle.tests.json", p);
    Localization loc = localize(*p, suite.tests, Formula::Ochiai);
    CHECK(top_lines(loc, 2) == std::vector<int>{8, 6});
    CHECK(top_lines(loc, 99) == std::vector<int>{8, 6, 4, 2, 7, 5, 3});
    CHECK(top_lines(loc, 0).empty());
}

TEST_CASE("formula names round-trip") {
    CHECK(std::string(formula_name(Formula::Ochiai)) == "ochiai");
    CHECK(std::string(formula_name(Formula::Tarantula)) == "tarantula");
    CHECK(formula_from_name("ochiai") == Formula::Ochiai);
    CHECK(formula_from_name("tarantula") == Formula::Tarantula);
    CHECK_THROWS_AS(formula_from_name("dstar"), std::invalid_argument);
}
