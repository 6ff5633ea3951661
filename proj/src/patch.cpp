#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "repairforge/minilang.hpp"

namespace repairforge {

namespace {

LocationKind kind_of(const Stmt& s) {
    switch (s.kind) {
        case Stmt::Kind::If:
        case Stmt::Kind::While: return LocationKind::BranchCondition;
        case Stmt::Kind::VarDecl:
        case Stmt::Kind::Assign: return LocationKind::AssignmentRhs;
        case Stmt::Kind::Return: return LocationKind::ReturnExpr;
    }
    return LocationKind::ReturnExpr;
}

void collect_names(const ExprPtr& e, std::set<std::string>& vars,
                   std::set<std::string>& consts) {
    switch (e->kind) {
        case Expr::Kind::Literal: return;
        case Expr::Kind::VarRef: vars.insert(e->name); return;
        case Expr::Kind::ConstRef: consts.insert(e->name); return;
        case Expr::Kind::Unary: collect_names(e->lhs, vars, consts); return;
        case Expr::Kind::Binary:
            collect_names(e->lhs, vars, consts);
            collect_names(e->rhs, vars, consts);
            return;
    }
}

StmtPtr rebuild(const StmtPtr& s, int line, const ExprPtr& replacement) {
    auto copy = std::make_shared<Stmt>(*s);
    if (s->line == line) {
        copy->expr = replacement;
        return copy;
    }
    for (StmtPtr& st : copy->body) st = rebuild(st, line, replacement);
    for (StmtPtr& st : copy->else_body) st = rebuild(st, line, replacement);
    return copy;
}

int diff_stmt_lists(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return -1;
    int total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Stmt& x = *a[i];
        const Stmt& y = *b[i];
        if (x.kind != y.kind || x.line != y.line || x.target != y.target)
            return -1;
        int inner = diff_stmt_lists(x.body, y.body);
        if (inner < 0) return -1;
        total += inner;
        inner = diff_stmt_lists(x.else_body, y.else_body);
        if (inner < 0) return -1;
        total += inner;
        if (!expr_equal(x.expr, y.expr)) ++total;
    }
    return total;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string range_header(int start, int count) {
    // Unified-diff convention: a one-line range omits the count, an empty
    // range points at the preceding line.
    if (count == 1) return std::to_string(start);
    return std::to_string(start) + "," + std::to_string(count);
}

}  // namespace

ProgramPtr apply_patch(const Program& p, const Patch& patch) {
    const FixLocation& loc = patch.location;
    StmtPtr s = find_statement(p, loc.line);
    if (!s)
        throw LocationMismatch("no statement at line " + std::to_string(loc.line));
    if (kind_of(*s) != loc.kind)
        throw LocationMismatch(std::string("statement at line ") +
                               std::to_string(loc.line) + " is not a " +
                               location_kind_name(loc.kind));
    if (!expr_equal(s->expr, patch.original))
        throw LocationMismatch("original expression at line " +
                               std::to_string(loc.line) + " does not match");
    ValueType slot = loc.kind == LocationKind::BranchCondition ? ValueType::Bool
                                                               : ValueType::Int;
    if (!patch.replacement || patch.replacement->type != slot)
        throw TypeError(std::string("replacement for a ") +
                            location_kind_name(loc.kind) +
                            (slot == ValueType::Bool ? " must be boolean"
                                                     : " must be an integer"),
                        loc.line, 1);
    std::set<std::string> vars;
    std::set<std::string> consts;
    collect_names(patch.replacement, vars, consts);
    std::vector<std::string> live = live_variables_at(p, loc.line);
    for (const std::string& v : vars)
        if (std::find(live.begin(), live.end(), v) == live.end())
            throw TypeError("unknown name '" + v + "'", loc.line, 1);
    auto cmap = constants_map(p);
    for (const std::string& c : consts)
        if (!cmap.count(c)) throw TypeError("unknown name '" + c + "'", loc.line, 1);

    auto out = std::make_shared<Program>(p);
    for (StmtPtr& st : out->body) st = rebuild(st, loc.line, patch.replacement);
    return out;
}

int count_differing_statement_exprs(const Program& a, const Program& b) {
    if (a.function_name != b.function_name || a.params != b.params ||
        a.constants != b.constants)
        return -1;
    return diff_stmt_lists(a.body, b.body);
}

std::string diff_programs(const Program& before, const Program& after,
                          const std::string& path) {
    std::string sb = pretty_print(before);
    std::string sa = pretty_print(after);
    if (sb == sa) return "";
    std::vector<std::string> a = split_lines(sb);
    std::vector<std::string> b = split_lines(sa);
    std::size_t na = a.size();
    std::size_t nb = b.size();

    // Longest common subsequence over whole lines.
    std::vector<std::vector<int>> lcs(na + 1, std::vector<int>(nb + 1, 0));
    for (std::size_t i = na; i-- > 0;)
        for (std::size_t j = nb; j-- > 0;)
            lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                                     : std::max(lcs[i + 1][j], lcs[i][j + 1]);

    struct Edit {
        char tag;  // ' ', '-', '+'
        std::size_t ai;
        std::size_t bi;
        const std::string* text;
    };
    std::vector<Edit> edits;
    std::size_t i = 0, j = 0;
    while (i < na || j < nb) {
        if (i < na && j < nb && a[i] == b[j]) {
            edits.push_back({' ', i, j, &a[i]});
            ++i;
            ++j;
        } else if (i < na && (j == nb || lcs[i + 1][j] >= lcs[i][j + 1])) {
            edits.push_back({'-', i, j, &a[i]});
            ++i;
        } else {
            edits.push_back({'+', i, j, &b[j]});
            ++j;
        }
    }

    const std::size_t context = 3;
    std::string out = "--- " + path + "\n+++ " + path + ".repaired\n";
    std::size_t n = edits.size();
    std::size_t pos = 0;
    while (pos < n) {
        while (pos < n && edits[pos].tag == ' ') ++pos;
        if (pos >= n) break;
        std::size_t start = pos >= context ? pos - context : 0;
        std::size_t end = pos;
        std::size_t last_change = pos;
        while (end < n) {
            if (edits[end].tag != ' ') {
                last_change = end;
                ++end;
                continue;
            }
            // Stop when a run of unchanged lines is long enough to separate
            // hunks (more than twice the context width).
            std::size_t run = end;
            while (run < n && edits[run].tag == ' ') ++run;
            if (run - end > 2 * context || run == n) break;
            end = run;
        }
        std::size_t stop = std::min(n, last_change + 1 + context);
        int a_start = static_cast<int>(edits[start].ai) + 1;
        int b_start = static_cast<int>(edits[start].bi) + 1;
        int a_count = 0, b_count = 0;
        for (std::size_t k = start; k < stop; ++k) {
            if (edits[k].tag != '+') ++a_count;
            if (edits[k].tag != '-') ++b_count;
        }
        if (a_count == 0) --a_start;
        if (b_count == 0) --b_start;
        out += "@@ -" + range_header(a_start, a_count) + " +" +
               range_header(b_start, b_count) + " @@\n";
        for (std::size_t k = start; k < stop; ++k) {
            out += edits[k].tag;
            out += *edits[k].text;
            out += "\n";
        }
        pos = stop;
    }
    return out;
}

}  // namespace repairforge
