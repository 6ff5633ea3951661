#include <string>
#include <vector>

#include "repairforge/minilang.hpp"

namespace repairforge {

namespace {

void render(const ExprPtr& e, std::string& out) {
    switch (e->kind) {
        case Expr::Kind::Literal:
            out += std::to_string(e->literal);
            return;
        case Expr::Kind::ConstRef:
        case Expr::Kind::VarRef:
            out += e->name;
            return;
        case Expr::Kind::Unary: {
            out += unary_token(e->un_op);
            bool parens = e->lhs->kind == Expr::Kind::Unary ||
                          e->lhs->kind == Expr::Kind::Binary;
            if (parens) out += "(";
            render(e->lhs, out);
            if (parens) out += ")";
            return;
        }
        case Expr::Kind::Binary: {
            int prec = binary_precedence(e->bin_op);
            bool lp = e->lhs->kind == Expr::Kind::Binary &&
                      binary_precedence(e->lhs->bin_op) < prec;
            bool rp = e->rhs->kind == Expr::Kind::Binary &&
                      binary_precedence(e->rhs->bin_op) <= prec;
            if (lp) out += "(";
            render(e->lhs, out);
            if (lp) out += ")";
            out += " ";
            out += binary_token(e->bin_op);
            out += " ";
            if (rp) out += "(";
            render(e->rhs, out);
            if (rp) out += ")";
            return;
        }
    }
}

std::string indent_of(int depth) {
    return std::string(static_cast<std::size_t>(depth) * 4, ' ');
}

// Emits text onto recorded source lines. Closing braces carry no line of
// their own; they are queued and flushed into the gaps between statements,
// sharing a line with the next emission when no gap exists.
struct LineSink {
    std::vector<std::string> lines;
    int cur = 0;
    struct Closer {
        int depth;
        std::string text;
    };
    std::vector<Closer> pending;

    void put(int line, int depth, const std::string& text) {
        if (line <= cur) {
            std::string& last = lines.back();
            for (const Closer& c : pending) last += " " + c.text;
            pending.clear();
            last += " " + text;
            return;
        }
        int avail = line - cur - 1;
        int n = static_cast<int>(pending.size());
        if (avail >= n) {
            for (const Closer& c : pending)
                lines.push_back(indent_of(c.depth) + c.text);
            for (int i = 0; i < avail - n; ++i) lines.emplace_back();
            lines.push_back(indent_of(depth) + text);
        } else {
            for (int i = 0; i < avail; ++i)
                lines.push_back(indent_of(pending[static_cast<std::size_t>(i)].depth) +
                                pending[static_cast<std::size_t>(i)].text);
            std::string comp =
                indent_of(pending[static_cast<std::size_t>(avail)].depth) +
                pending[static_cast<std::size_t>(avail)].text;
            for (int i = avail + 1; i < n; ++i)
                comp += " " + pending[static_cast<std::size_t>(i)].text;
            comp += " " + text;
            lines.push_back(comp);
        }
        pending.clear();
        cur = line;
    }
};

std::string simple_text(const Stmt& s) {
    std::string out;
    switch (s.kind) {
        case Stmt::Kind::VarDecl:
            out = "var " + s.target + " = ";
            break;
        case Stmt::Kind::Assign:
            out = s.target + " = ";
            break;
        case Stmt::Kind::Return:
            out = "return ";
            break;
        default:
            return out;
    }
    render(s.expr, out);
    out += ";";
    return out;
}

struct ProgramPrinter {
    LineSink sink;

    void print_stmt(const StmtPtr& s, int depth) {
        switch (s->kind) {
            case Stmt::Kind::VarDecl:
            case Stmt::Kind::Assign:
            case Stmt::Kind::Return:
                sink.put(s->line, depth, simple_text(*s));
                return;
            case Stmt::Kind::While: {
                std::string head = "while (";
                render(s->expr, head);
                head += ") {";
                sink.put(s->line, depth, head);
                for (const StmtPtr& st : s->body) print_stmt(st, depth + 1);
                sink.pending.push_back({depth, "}"});
                return;
            }
            case Stmt::Kind::If:
                print_if(s, depth);
                return;
        }
    }

    void print_if(const StmtPtr& s, int depth) {
        std::string head = "if (";
        render(s->expr, head);
        head += ") {";
        sink.put(s->line, depth, head);
        for (const StmtPtr& st : s->body) print_stmt(st, depth + 1);
        if (s->else_body.empty()) {
            sink.pending.push_back({depth, "}"});
            return;
        }
        if (s->else_body.size() == 1 &&
            s->else_body[0]->kind == Stmt::Kind::If) {
            // Cuddle: the nested header lands on the closer's line as
            // "} else if (...) {".
            sink.pending.push_back({depth, "} else"});
            print_if(s->else_body[0], depth);
            return;
        }
        bool simple = s->else_body.size() == 1 &&
                      (s->else_body[0]->kind == Stmt::Kind::VarDecl ||
                       s->else_body[0]->kind == Stmt::Kind::Assign ||
                       s->else_body[0]->kind == Stmt::Kind::Return);
        if (simple && sink.pending.empty() &&
            s->else_body[0]->line == sink.cur + 1) {
            sink.put(s->else_body[0]->line, depth,
                     "} else { " + simple_text(*s->else_body[0]) + " }");
            return;
        }
        sink.pending.push_back({depth, "} else {"});
        for (const StmtPtr& st : s->else_body) print_stmt(st, depth + 1);
        sink.pending.push_back({depth, "}"});
    }
};

}  // namespace

std::string print_expression(const ExprPtr& e) {
    std::string out;
    render(e, out);
    return out;
}

std::string pretty_print(const Program& p) {
    ProgramPrinter pr;
    std::string head = "function " + p.function_name + "(";
    for (std::size_t i = 0; i < p.params.size(); ++i) {
        if (i) head += ", ";
        head += p.params[i];
    }
    head += ") {";
    pr.sink.put(p.function_line, 0, head);
    for (const StmtPtr& s : p.body) pr.print_stmt(s, 1);
    pr.sink.put(p.end_line, 0, "}");
    std::string out;
    for (const std::string& line : pr.sink.lines) {
        out += line;
        out += "\n";
    }
    if (!p.constants.empty()) {
        out += "\n";
        for (const auto& [name, value] : p.constants)
            out += "const " + name + " = " + std::to_string(value) + ";\n";
    }
    return out;
}

}  // namespace repairforge
