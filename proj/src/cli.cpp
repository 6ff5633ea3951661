#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "repairforge/cli.hpp"
#include "repairforge/evidence.hpp"
#include "repairforge/repair.hpp"

namespace repairforge {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPatch = 2;
constexpr int kExitOverfitting = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_file(path, j.dump(2) + "\n");
}

nlohmann::json patch_to_json(const Patch& p) {
    nlohmann::json j;
    j["line"] = p.location.line;
    j["kind"] = location_kind_name(p.location.kind);
    j["original"] = print_expression(p.original);
    j["replacement"] = print_expression(p.replacement);
    return j;
}

Patch patch_from_json(const nlohmann::json& j, const Program& context) {
    int line = j.at("line").get<int>();
    LocationKind kind = location_kind_from_name(j.at("kind").get<std::string>());
    Patch p;
    p.location = location_at(context, line);
    if (p.location.kind != kind)
        throw std::runtime_error("patch targets a " + std::string(location_kind_name(kind)) +
                                 " but line " + std::to_string(line) + " is a " +
                                 location_kind_name(p.location.kind));
    p.original = parse_expression(j.at("original").get<std::string>(), context, line);
    p.replacement =
        parse_expression(j.at("replacement").get<std::string>(), context, line);
    return p;
}

Patch load_patch(const std::string& path, const Program& context) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return patch_from_json(j, context);
}

std::string describe_outcome(const CaseOutcome& o) {
    const RunResult& r = o.run;
    switch (r.status) {
        case RunStatus::Returned:
            return std::to_string(r.value);
        case RunStatus::RuntimeError:
            return std::string(error_kind_name(r.error)) + " at line " +
                   std::to_string(r.error_line);
        case RunStatus::BoundExceeded:
            return "bound-exceeded";
        case RunStatus::ProbeStarved:
            return "probe-starved";
    }
    return "?";
}

nlohmann::json outcomes_to_json(const SuiteResult& res) {
    nlohmann::json out = nlohmann::json::array();
    for (const CaseOutcome& o : res.outcomes) {
        nlohmann::json jo;
        jo["name"] = o.name;
        jo["passed"] = o.passed;
        jo["expected"] = o.expected;
        jo["status"] = run_status_name(o.run.status);
        if (o.run.status == RunStatus::Returned) jo["value"] = o.run.value;
        if (o.run.status == RunStatus::RuntimeError) {
            jo["error"] = error_kind_name(o.run.error);
            jo["error_line"] = o.run.error_line;
        }
        out.push_back(std::move(jo));
    }
    return out;
}

struct CommonArgs {
    std::string program_path;
    std::string suite_path;
    std::string report_path;
};

int do_run(const CommonArgs& a, bool held_out_only) {
    ProgramPtr p = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *p);
    const auto& cases = held_out_only ? suite.held_out : suite.tests;
    SuiteResult res = run_cases(*p, cases);
    for (const CaseOutcome& o : res.outcomes) {
        if (o.passed)
            std::printf("[PASS] %s\n", o.name.c_str());
        else
            std::printf("[FAIL] %s: expected %lld, got %s\n", o.name.c_str(),
                        static_cast<long long>(o.expected),
                        describe_outcome(o).c_str());
    }
    std::printf("%d passed, %d failed\n", res.passed, res.failed);
    if (!a.report_path.empty()) {
        nlohmann::json j;
        j["function"] = p->function_name;
        j["results"] = outcomes_to_json(res);
        j["passed"] = res.passed;
        j["failed"] = res.failed;
        write_json(a.report_path, j);
    }
    return kExitOk;
}

int do_localize(const CommonArgs& a, const std::string& formula_name_, int top_k) {
    ProgramPtr p = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *p);
    Formula formula = formula_from_name(formula_name_);
    Localization loc = localize(*p, suite.tests, formula);
    int shown = 0;
    for (const LineScore& s : loc.ranking) {
        if (top_k > 0 && shown >= top_k) break;
        std::printf("line %d: %.9f (ef=%d, ep=%d)\n", s.line, s.score, s.ef, s.ep);
        ++shown;
    }
    std::printf("%d failing, %d passing\n", loc.total_failed, loc.total_passed);
    if (!a.report_path.empty()) {
        nlohmann::json j;
        j["formula"] = formula_name(formula);
        j["total_failed"] = loc.total_failed;
        j["total_passed"] = loc.total_passed;
        j["failing_tests"] = loc.failing_tests;
        nlohmann::json ranking = nlohmann::json::array();
        for (const LineScore& s : loc.ranking)
            ranking.push_back({{"line", s.line},
                               {"score", s.score},
                               {"ef", s.ef},
                               {"ep", s.ep}});
        j["ranking"] = std::move(ranking);
        write_json(a.report_path, j);
    }
    return kExitOk;
}

int do_constraint(const CommonArgs& a, int line, int max_evals, int max_paths,
                  bool unrestricted, const std::string& out_path) {
    ProgramPtr p = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *p);
    FixLocation loc = location_at(*p, line);
    AngelicBounds bounds;
    bounds.max_evals = max_evals;
    bounds.max_paths = max_paths;
    std::vector<std::int64_t> pool = constant_pool_for(*p, unrestricted);
    RepairConstraint c;
    try {
        c = build_repair_constraint(*p, suite.tests, loc, pool, bounds);
    } catch (const InfeasibleLocation& e) {
        std::printf("infeasible: %s\n", e.what());
        return kExitNoPatch;
    }
    std::printf("line %d (%s): %zu forests, %zu unreached tests\n", line,
                location_kind_name(loc.kind), c.forests.size(),
                c.unreached_tests.size());
    for (const AngelicForest& f : c.forests)
        std::printf("  %s: %zu passing paths\n", f.test_name.c_str(),
                    f.paths.size());
    nlohmann::json j = constraint_to_json(c);
    if (!out_path.empty()) write_json(out_path, j);
    if (!a.report_path.empty()) write_json(a.report_path, j);
    return kExitOk;
}

ComponentSet components_from_ops(const RepairConstraint& c,
                                 const std::string& ops_csv) {
    std::set<std::string> want;
    std::string token;
    for (char ch : ops_csv + ",") {
        if (ch == ',') {
            if (!token.empty()) want.insert(token);
            token.clear();
        } else {
            token += static_cast<char>(std::tolower(ch));
        }
    }
    static const std::set<std::string> known = {
        "add", "sub", "mul", "div", "mod", "neg", "eq", "ne",
        "lt",  "le",  "gt",  "ge",  "and", "or",  "not"};
    for (const std::string& t : want)
        if (!known.count(t)) throw std::runtime_error("unknown op '" + t + "'");
    ComponentSet cs;
    cs.variables = c.location.live_vars;
    cs.constants = c.constant_pool;
    std::sort(cs.constants.begin(), cs.constants.end());
    cs.constants.erase(std::unique(cs.constants.begin(), cs.constants.end()),
                       cs.constants.end());
    if (want.count("neg")) cs.int_unary.push_back(UnaryOp::Neg);
    const std::pair<const char*, BinaryOp> int_order[] = {
        {"add", BinaryOp::Add}, {"sub", BinaryOp::Sub}, {"mul", BinaryOp::Mul},
        {"div", BinaryOp::Div}, {"mod", BinaryOp::Mod}};
    for (const auto& [name, op] : int_order)
        if (want.count(name)) cs.int_ops.push_back(op);
    const std::pair<const char*, BinaryOp> cmp_order[] = {
        {"eq", BinaryOp::Eq}, {"ne", BinaryOp::Ne}, {"lt", BinaryOp::Lt},
        {"le", BinaryOp::Le}, {"gt", BinaryOp::Gt}, {"ge", BinaryOp::Ge}};
    for (const auto& [name, op] : cmp_order)
        if (want.count(name)) cs.cmp_ops.push_back(op);
    const std::pair<const char*, BinaryOp> logic_order[] = {
        {"and", BinaryOp::And}, {"or", BinaryOp::Or}};
    for (const auto& [name, op] : logic_order)
        if (want.count(name)) cs.logic_ops.push_back(op);
    if (want.count("not")) cs.bool_unary.push_back(UnaryOp::Not);
    return cs;
}

int do_synth(const std::string& constraint_path, int max_size,
             const std::string& ops_csv, int count,
             const std::string& report_path) {
    std::ifstream in(constraint_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + constraint_path);
    nlohmann::json cj;
    in >> cj;
    RepairConstraint c = constraint_from_json(cj);
    ComponentSet comps = ops_csv.empty() ? default_components(c, false)
                                         : components_from_ops(c, ops_csv);
    if (count > 0) {
        std::vector<ExprPtr> all = enumerate_expressions(comps, c.value_kind, max_size);
        int shown = 0;
        for (const ExprPtr& e : all) {
            if (shown >= count) break;
            std::printf("%s\n", print_expression(e).c_str());
            ++shown;
        }
        return kExitOk;
    }
    SynthLimits limits;
    limits.max_size = max_size;
    SynthResult r = synthesize(c, comps, limits);
    nlohmann::json j;
    j["visits"] = r.visits;
    j["capped"] = r.capped;
    if (r.status == SynthStatus::Found) {
        std::printf("found: %s (size %d, visits %ld)\n",
                    print_expression(r.expr).c_str(), r.size, r.visits);
        j["status"] = "found";
        j["expr"] = print_expression(r.expr);
        j["size"] = r.size;
        if (!report_path.empty()) write_json(report_path, j);
        return kExitOk;
    }
    std::printf("exhausted after %ld visits%s\n", r.visits,
                r.capped ? " (capped)" : "");
    j["status"] = "exhausted";
    if (!report_path.empty()) write_json(report_path, j);
    return kExitNoPatch;
}

void print_attempts(const std::vector<RepairAttempt>& attempts) {
    for (const RepairAttempt& at : attempts) {
        std::printf("line %d (score %.6f): %s", at.line, at.score,
                    attempt_status_name(at.status));
        if (at.status == AttemptStatus::SynthesisExhausted)
            std::printf(" (visits %ld%s)", at.visits, at.capped ? ", capped" : "");
        if (at.status == AttemptStatus::ValidationFailed && at.candidate)
            std::printf(" (candidate %s)", print_expression(at.candidate).c_str());
        std::printf("\n");
    }
}

nlohmann::json attempts_to_json(const std::vector<RepairAttempt>& attempts) {
    nlohmann::json out = nlohmann::json::array();
    for (const RepairAttempt& at : attempts) {
        nlohmann::json ja;
        ja["line"] = at.line;
        ja["score"] = at.score;
        ja["status"] = attempt_status_name(at.status);
        ja["visits"] = at.visits;
        ja["capped"] = at.capped;
        if (at.candidate) ja["candidate"] = print_expression(at.candidate);
        if (!at.detail.empty()) ja["detail"] = at.detail;
        out.push_back(std::move(ja));
    }
    return out;
}

int do_repair(const CommonArgs& a, const RepairConfig& cfg,
              const std::string& out_path) {
    ProgramPtr p = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *p);
    RepairOutcome res = repair_program(*p, suite, cfg);

    nlohmann::json j;
    j["status"] = repair_status_name(res.status);
    j["attempts"] = attempts_to_json(res.attempts);
    j["pool"] = res.pool;

    if (res.status == RepairStatus::AlreadyPassing) {
        std::printf("already passing: all %zu tests pass\n", suite.tests.size());
        if (!a.report_path.empty()) write_json(a.report_path, j);
        return kExitOk;
    }
    print_attempts(res.attempts);
    if (res.status == RepairStatus::NoPatchFound) {
        std::printf("no patch found\n");
        if (!a.report_path.empty()) write_json(a.report_path, j);
        return kExitNoPatch;
    }
    std::string diff = diff_programs(*p, *res.repaired, a.program_path);
    std::printf("patch line %d (%s): %s  ->  %s\n", res.patch.location.line,
                location_kind_name(res.patch.location.kind),
                print_expression(res.patch.original).c_str(),
                print_expression(res.patch.replacement).c_str());
    std::fputs(diff.c_str(), stdout);
    std::string repaired_path = a.program_path + ".repaired";
    write_file(repaired_path, pretty_print(*res.repaired));
    std::printf("wrote %s\n", repaired_path.c_str());
    j["patch"] = patch_to_json(res.patch);
    j["diff"] = diff;
    j["repaired_path"] = repaired_path;
    if (!out_path.empty()) write_json(out_path, patch_to_json(res.patch));
    if (!a.report_path.empty()) write_json(a.report_path, j);
    return kExitOk;
}

int do_evidence(const CommonArgs& a, const std::string& patch_path,
                const std::string& reference_path, std::uint64_t seed,
                const std::string& suite_out) {
    ProgramPtr original = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *original);
    Patch patch = load_patch(patch_path, *original);
    ProgramPtr patched = apply_patch(*original, patch);
    ProgramPtr reference;
    if (!reference_path.empty()) reference = load_program(reference_path);

    EvidenceConfig cfg;
    cfg.seed = seed;
    EvidenceReport report =
        amplify(*original, *patched, reference ? reference.get() : nullptr,
                suite, cfg);
    std::printf("difference-revealing: %d\n", report.difference_revealing);
    std::printf("agreeing kept: %d\n", report.agreeing_kept);
    for (const AmplifiedTest& t : report.tests) {
        if (t.kind != AmpKind::DifferenceRevealing) continue;
        std::string inputs;
        for (std::size_t i = 0; i < t.inputs.size(); ++i) {
            if (i) inputs += ", ";
            inputs += std::to_string(t.inputs[i]);
        }
        std::printf("  %s (%s)%s\n", t.name.c_str(), inputs.c_str(),
                    t.has_oracle
                        ? (" expected " + std::to_string(t.expected)).c_str()
                        : "");
    }
    std::printf("patched passes given tests: %s\n",
                report.patched_passes_given ? "yes" : "no");
    std::printf("patched passes oracled tests: %s\n",
                report.patched_passes_oracled ? "yes" : "no");
    if (!suite_out.empty()) {
        if (reference) {
            TestSuite amp = amplified_suite(report, original->function_name);
            write_json(suite_out, suite_to_json(amp));
        } else {
            std::fprintf(stderr,
                         "note: --suite-out needs --reference for oracles; "
                         "nothing written\n");
        }
    }
    if (!a.report_path.empty()) write_json(a.report_path, evidence_to_json(report));
    return kExitOk;
}

int do_overfit(const CommonArgs& a, const std::string& patch_path) {
    ProgramPtr p = load_program(a.program_path);
    TestSuite suite = load_suite(a.suite_path, *p);
    ProgramPtr target = p;
    if (!patch_path.empty()) target = apply_patch(*p, load_patch(patch_path, *p));
    OverfitReport report = overfit_check(*target, suite);
    std::printf("verdict: %s\n", overfit_verdict_name(report.verdict));
    for (const CaseOutcome& o : report.held_out.outcomes) {
        if (o.passed) continue;
        std::printf("  held-out failure %s: expected %lld, got %s\n",
                    o.name.c_str(), static_cast<long long>(o.expected),
                    describe_outcome(o).c_str());
    }
    if (!a.report_path.empty()) write_json(a.report_path, overfit_to_json(report));
    return report.verdict == OverfitVerdict::Overfitting ? kExitOverfitting
                                                         : kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"test-driven automated program repair for MiniLang"};
    app.require_subcommand(1);

    CommonArgs run_a, loc_a, con_a, rep_a, evi_a, ovf_a;
    bool held_out_only = false;
    std::string formula = "ochiai";
    int top_k = 0;
    int con_line = 0;
    int max_evals = 12;
    int max_paths = 64;
    bool unrestricted = false;
    bool include_div = false;
    std::string con_out;
    std::string synth_constraint;
    int synth_max_size = 11;
    std::string synth_ops;
    int synth_count = 0;
    std::string synth_report;
    int rep_top_k = 5;
    int rep_max_size = 11;
    long long budget_secs = 120;
    std::string rep_out;
    std::string evi_patch, evi_reference, evi_suite_out;
    std::uint64_t seed = 0xC0FFEE;
    std::string ovf_patch;

    CLI::App* run = app.add_subcommand("run", "run a test suite and print verdicts");
    run->add_option("program", run_a.program_path, "MiniLang source file")->required();
    run->add_option("--suite", run_a.suite_path, "test suite JSON")->required();
    run->add_flag("--held-out-only", held_out_only, "run only the held-out tests");
    run->add_option("--report", run_a.report_path, "write a JSON report");

    CLI::App* loc = app.add_subcommand("localize", "rank suspicious lines");
    loc->add_option("program", loc_a.program_path, "MiniLang source file")->required();
    loc->add_option("--suite", loc_a.suite_path, "test suite JSON")->required();
    loc->add_option("--formula", formula, "ochiai or tarantula");
    loc->add_option("--top-k", top_k, "show only the k highest-ranked lines");
    loc->add_option("--report", loc_a.report_path, "write a JSON report");

    CLI::App* con = app.add_subcommand("constraint",
                                       "extract the repair constraint for a line");
    con->add_option("program", con_a.program_path, "MiniLang source file")->required();
    con->add_option("--suite", con_a.suite_path, "test suite JSON")->required();
    con->add_option("--line", con_line, "line of the expression slot")->required();
    con->add_option("--max-evals", max_evals, "forced evaluations per run");
    con->add_option("--max-paths", max_paths, "passing paths kept per test");
    con->add_flag("--unrestricted-constants", unrestricted,
                  "use the full -10..10 constant pool");
    con->add_option("--out", con_out, "write the constraint JSON");
    con->add_option("--report", con_a.report_path, "write a JSON report");

    CLI::App* syn = app.add_subcommand("synth",
                                       "synthesize a patch expression from a constraint");
    syn->add_option("constraint", synth_constraint, "constraint JSON file")->required();
    syn->add_option("--max-size", synth_max_size, "largest expression size tried");
    syn->add_option("--ops", synth_ops,
                    "comma-separated operator set overriding the defaults");
    syn->add_option("--count", synth_count,
                    "print the first N candidate expressions instead of solving");
    syn->add_option("--report", synth_report, "write a JSON report");

    CLI::App* rep = app.add_subcommand("repair", "localize, synthesize, validate");
    rep->add_option("program", rep_a.program_path, "MiniLang source file")->required();
    rep->add_option("--suite", rep_a.suite_path, "test suite JSON")->required();
    rep->add_option("--formula", formula, "ochiai or tarantula");
    rep->add_option("--top-k", rep_top_k, "suspicious lines to attempt");
    rep->add_option("--max-size", rep_max_size, "largest expression size tried");
    rep->add_option("--max-evals", max_evals, "forced evaluations per run");
    rep->add_option("--max-paths", max_paths, "passing paths kept per test");
    rep->add_flag("--unrestricted-constants", unrestricted,
                  "use the full -10..10 constant pool");
    rep->add_flag("--include-div", include_div,
                  "allow division and remainder in candidates");
    rep->add_option("--budget-secs", budget_secs, "total wall-clock budget");
    rep->add_option("--out", rep_out, "write the accepted patch JSON");
    rep->add_option("--report", rep_a.report_path, "write a JSON report");

    CLI::App* evi = app.add_subcommand("evidence",
                                       "amplify tests around an accepted patch");
    evi->add_option("program", evi_a.program_path, "buggy MiniLang source file")->required();
    evi->add_option("--suite", evi_a.suite_path, "test suite JSON")->required();
    evi->add_option("--patch", evi_patch, "patch JSON to apply")->required();
    evi->add_option("--reference", evi_reference, "trusted implementation for oracles");
    evi->add_option("--seed", seed, "random input seed");
    evi->add_option("--suite-out", evi_suite_out,
                    "write the oracled amplified tests as a suite");
    evi->add_option("--report", evi_a.report_path, "write a JSON report");

    CLI::App* ovf = app.add_subcommand("overfit-check",
                                       "audit a patched program against held-out tests");
    ovf->add_option("program", ovf_a.program_path,
                    "patched MiniLang source file")->required();
    ovf->add_option("--suite", ovf_a.suite_path, "test suite JSON")->required();
    ovf->add_option("--patch", ovf_patch, "patch JSON to apply first");
    ovf->add_option("--report", ovf_a.report_path, "write a JSON report");

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("repairforge");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (std::string& s : full) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (run->parsed()) return do_run(run_a, held_out_only);
        if (loc->parsed()) return do_localize(loc_a, formula, top_k);
        if (con->parsed())
            return do_constraint(con_a, con_line, max_evals, max_paths,
                                 unrestricted, con_out);
        if (syn->parsed())
            return do_synth(synth_constraint, synth_max_size, synth_ops,
                            synth_count, synth_report);
        if (rep->parsed()) {
            RepairConfig cfg;
            cfg.formula = formula_from_name(formula);
            cfg.top_k = rep_top_k;
            cfg.limits.max_size = rep_max_size;
            cfg.bounds.max_evals = max_evals;
            cfg.bounds.max_paths = max_paths;
            cfg.unrestricted_constants = unrestricted;
            cfg.include_div = include_div;
            cfg.budget_total_ms = budget_secs * 1000;
            return do_repair(rep_a, cfg, rep_out);
        }
        if (evi->parsed())
            return do_evidence(evi_a, evi_patch, evi_reference, seed, evi_suite_out);
        if (ovf->parsed()) return do_overfit(ovf_a, ovf_patch);
    } catch (const NoHeldOutTests& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}

}  // namespace repairforge
