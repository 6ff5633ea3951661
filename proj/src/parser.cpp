#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "repairforge/minilang.hpp"

namespace repairforge {

namespace {

enum class Tok {
    End, Ident, Int,
    KwFunction, KwConst, KwVar, KwIf, KwElse, KwWhile, KwReturn,
    LParen, RParen, LBrace, RBrace, Semi, Comma, Assign,
    OrOr, AndAnd, EqEq, NotEq, Lt, Le, Gt, Ge,
    Plus, Minus, Star, Slash, Percent, Bang,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(const std::string& src, int start_line) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = start_line;
    int col = 1;
    auto push = [&](Tok k, std::string text, int l, int c, std::int64_t v = 0) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.value = v;
        t.line = l;
        t.col = c;
        out.push_back(std::move(t));
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int tl = line, tc = col;
        if (c >= '0' && c <= '9') {
            std::uint64_t v = 0;
            std::size_t start = i;
            while (i < src.size() && src[i] >= '0' && src[i] <= '9') {
                v = v * 10 + static_cast<std::uint64_t>(src[i] - '0');
                if (v > static_cast<std::uint64_t>(
                            std::numeric_limits<std::int64_t>::max()))
                    throw ParseError("integer literal too large", tl, tc);
                ++i;
                ++col;
            }
            push(Tok::Int, src.substr(start, i - start), tl, tc,
                 static_cast<std::int64_t>(v));
            continue;
        }
        if (ident_start(c)) {
            std::size_t start = i;
            while (i < src.size() && ident_char(src[i])) {
                ++i;
                ++col;
            }
            std::string word = src.substr(start, i - start);
            Tok k = Tok::Ident;
            if (word == "function") k = Tok::KwFunction;
            else if (word == "const") k = Tok::KwConst;
            else if (word == "var") k = Tok::KwVar;
            else if (word == "if") k = Tok::KwIf;
            else if (word == "else") k = Tok::KwElse;
            else if (word == "while") k = Tok::KwWhile;
            else if (word == "return") k = Tok::KwReturn;
            push(k, std::move(word), tl, tc);
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two('|', '|')) { push(Tok::OrOr, "||", tl, tc); i += 2; col += 2; continue; }
        if (two('&', '&')) { push(Tok::AndAnd, "&&", tl, tc); i += 2; col += 2; continue; }
        if (two('=', '=')) { push(Tok::EqEq, "==", tl, tc); i += 2; col += 2; continue; }
        if (two('!', '=')) { push(Tok::NotEq, "!=", tl, tc); i += 2; col += 2; continue; }
        if (two('<', '=')) { push(Tok::Le, "<=", tl, tc); i += 2; col += 2; continue; }
        if (two('>', '=')) { push(Tok::Ge, ">=", tl, tc); i += 2; col += 2; continue; }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ';': k = Tok::Semi; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Assign; break;
            case '<': k = Tok::Lt; break;
            case '>': k = Tok::Gt; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '%': k = Tok::Percent; break;
            case '!': k = Tok::Bang; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
        push(k, std::string(1, c), tl, tc);
        ++i;
        ++col;
    }
    push(Tok::End, "", line, col);
    return out;
}

const char* describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : t.text.c_str();
}

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;

    std::map<std::string, std::int64_t> consts;
    std::vector<std::pair<std::string, std::int64_t>> const_order;
    std::vector<std::string> params;
    std::set<std::string> param_set;
    std::set<std::string> locals;          // function mode: locals declared so far
    const std::set<std::string>* visible = nullptr;  // expression mode
    int last_stmt_line = 0;

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos + static_cast<std::size_t>(ahead);
        return i < toks.size() ? toks[i] : toks.back();
    }
    const Token& next() {
        const Token& t = toks[pos];
        if (pos + 1 < toks.size()) ++pos;
        return t;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k)
            throw ParseError(std::string("expected ") + what + ", found '" +
                                 describe(peek()) + "'",
                             peek().line, peek().col);
        return next();
    }

    bool is_var(const std::string& name) const {
        if (visible) return visible->count(name) != 0;
        return param_set.count(name) != 0 || locals.count(name) != 0;
    }

    // const NAME = [-]INT ;
    void const_decl(bool record) {
        const Token& kw = expect(Tok::KwConst, "'const'");
        const Token& name = expect(Tok::Ident, "constant name");
        expect(Tok::Assign, "'='");
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            neg = true;
            next();
        }
        const Token& val = expect(Tok::Int, "integer value");
        expect(Tok::Semi, "';'");
        if (!record) return;
        if (consts.count(name.text))
            throw TypeError("duplicate constant '" + name.text + "'", name.line,
                            name.col);
        std::int64_t v = neg ? -val.value : val.value;
        consts[name.text] = v;
        const_order.emplace_back(name.text, v);
        (void)kw;
    }

    // Collect constant declarations wherever they appear at the top level so
    // references resolve regardless of declaration position.
    void prescan_consts() {
        std::size_t saved = pos;
        int depth = 0;
        while (peek().kind != Tok::End) {
            Tok k = peek().kind;
            if (k == Tok::LBrace) { ++depth; next(); continue; }
            if (k == Tok::RBrace) { --depth; next(); continue; }
            if (k == Tok::KwConst && depth == 0) {
                const_decl(true);
                continue;
            }
            next();
        }
        pos = saved;
    }

    ExprPtr resolve(const Token& t) {
        if (is_var(t.text)) return make_var_ref(t.text);
        if (consts.count(t.text)) return make_const_ref(t.text);
        throw TypeError("unknown name '" + t.text + "'", t.line, t.col);
    }

    void require_int(const ExprPtr& e, const Token& at, const char* what) {
        if (e->type != ValueType::Int)
            throw TypeError(std::string(what) + " must be an integer", at.line, at.col);
    }
    void require_bool(const ExprPtr& e, const Token& at, const char* what) {
        if (e->type != ValueType::Bool)
            throw TypeError(std::string(what) + " must be boolean", at.line, at.col);
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int:
                next();
                return make_literal(t.value);
            case Tok::Ident:
                next();
                return resolve(t);
            case Tok::LParen: {
                next();
                ExprPtr e = expression();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw ParseError(std::string("expected expression, found '") +
                                     describe(t) + "'",
                                 t.line, t.col);
        }
    }

    ExprPtr unary() {
        const Token& t = peek();
        if (t.kind == Tok::Minus) {
            next();
            ExprPtr e = unary();
            require_int(e, t, "operand of '-'");
            return make_unary(UnaryOp::Neg, std::move(e));
        }
        if (t.kind == Tok::Bang) {
            next();
            ExprPtr e = unary();
            require_bool(e, t, "operand of '!'");
            return make_unary(UnaryOp::Not, std::move(e));
        }
        return primary();
    }

    ExprPtr binary_level(int level) {
        // level: 1 ||, 2 &&, 3 == !=, 4 < <= > >=, 5 + -, 6 * / %
        if (level > 6) return unary();
        ExprPtr lhs = binary_level(level + 1);
        for (;;) {
            const Token& t = peek();
            BinaryOp op;
            switch (t.kind) {
                case Tok::OrOr: op = BinaryOp::Or; break;
                case Tok::AndAnd: op = BinaryOp::And; break;
                case Tok::EqEq: op = BinaryOp::Eq; break;
                case Tok::NotEq: op = BinaryOp::Ne; break;
                case Tok::Lt: op = BinaryOp::Lt; break;
                case Tok::Le: op = BinaryOp::Le; break;
                case Tok::Gt: op = BinaryOp::Gt; break;
                case Tok::Ge: op = BinaryOp::Ge; break;
                case Tok::Plus: op = BinaryOp::Add; break;
                case Tok::Minus: op = BinaryOp::Sub; break;
                case Tok::Star: op = BinaryOp::Mul; break;
                case Tok::Slash: op = BinaryOp::Div; break;
                case Tok::Percent: op = BinaryOp::Mod; break;
                default: return lhs;
            }
            if (binary_precedence(op) != level) return lhs;
            next();
            ExprPtr rhs = binary_level(level + 1);
            const char* what = is_logical(op) ? "operands of a logical operator"
                                              : "operands of an arithmetic or "
                                                "comparison operator";
            if (binary_operand_type(op) == ValueType::Int) {
                require_int(lhs, t, what);
                require_int(rhs, t, what);
            } else {
                require_bool(lhs, t, what);
                require_bool(rhs, t, what);
            }
            lhs = make_binary(op, std::move(lhs), std::move(rhs));
        }
    }

    ExprPtr expression() { return binary_level(1); }

    void note_stmt_line(const Token& t) {
        if (t.line <= last_stmt_line)
            throw ParseError("statement shares line " + std::to_string(t.line) +
                                 " with a previous statement",
                             t.line, t.col);
        last_stmt_line = t.line;
    }

    std::vector<StmtPtr> body_block() {
        // Braced block or a single braceless statement.
        std::vector<StmtPtr> out;
        if (peek().kind == Tok::LBrace) {
            next();
            while (peek().kind != Tok::RBrace) {
                if (peek().kind == Tok::End)
                    throw ParseError("expected '}'", peek().line, peek().col);
                out.push_back(statement());
            }
            next();
            return out;
        }
        out.push_back(statement());
        return out;
    }

    StmtPtr statement() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::KwVar: {
                note_stmt_line(t);
                next();
                const Token& name = expect(Tok::Ident, "variable name");
                if (param_set.count(name.text) || locals.count(name.text))
                    throw TypeError("duplicate declaration of '" + name.text + "'",
                                    name.line, name.col);
                if (consts.count(name.text))
                    throw TypeError("'" + name.text + "' is already a constant",
                                    name.line, name.col);
                expect(Tok::Assign, "'='");
                ExprPtr init = expression();
                require_int(init, name, "initializer of a variable");
                expect(Tok::Semi, "';'");
                locals.insert(name.text);
                return make_var_decl(t.line, name.text, std::move(init));
            }
            case Tok::Ident: {
                note_stmt_line(t);
                const Token& name = next();
                if (consts.count(name.text) && !is_var(name.text))
                    throw TypeError("cannot assign to constant '" + name.text + "'",
                                    name.line, name.col);
                if (!is_var(name.text))
                    throw TypeError("unknown name '" + name.text + "'", name.line,
                                    name.col);
                expect(Tok::Assign, "'='");
                ExprPtr rhs = expression();
                require_int(rhs, name, "assigned value");
                expect(Tok::Semi, "';'");
                return make_assign(t.line, name.text, std::move(rhs));
            }
            case Tok::KwIf: {
                note_stmt_line(t);
                next();
                expect(Tok::LParen, "'('");
                ExprPtr cond = expression();
                require_bool(cond, t, "an if condition");
                expect(Tok::RParen, "')'");
                std::vector<StmtPtr> then_body = body_block();
                std::vector<StmtPtr> else_body;
                if (peek().kind == Tok::KwElse) {
                    next();
                    if (peek().kind == Tok::KwIf)
                        else_body.push_back(statement());
                    else
                        else_body = body_block();
                }
                return make_if(t.line, std::move(cond), std::move(then_body),
                               std::move(else_body));
            }
            case Tok::KwWhile: {
                note_stmt_line(t);
                next();
                expect(Tok::LParen, "'('");
                ExprPtr cond = expression();
                require_bool(cond, t, "a while condition");
                expect(Tok::RParen, "')'");
                std::vector<StmtPtr> body = body_block();
                return make_while(t.line, std::move(cond), std::move(body));
            }
            case Tok::KwReturn: {
                note_stmt_line(t);
                next();
                ExprPtr value = expression();
                require_int(value, t, "a return value");
                expect(Tok::Semi, "';'");
                return make_return(t.line, std::move(value));
            }
            default:
                throw ParseError(std::string("expected statement, found '") +
                                     describe(t) + "'",
                                 t.line, t.col);
        }
    }

    ProgramPtr program() {
        prescan_consts();
        auto p = std::make_shared<Program>();
        bool have_function = false;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::KwConst) {
                const_decl(false);
                continue;
            }
            if (peek().kind != Tok::KwFunction)
                throw ParseError(std::string("expected 'function' or 'const', "
                                             "found '") +
                                     describe(peek()) + "'",
                                 peek().line, peek().col);
            if (have_function)
                throw ParseError("multiple functions in one file", peek().line,
                                 peek().col);
            have_function = true;
            const Token& kw = next();
            p->function_line = kw.line;
            const Token& name = expect(Tok::Ident, "function name");
            p->function_name = name.text;
            expect(Tok::LParen, "'('");
            if (peek().kind != Tok::RParen) {
                for (;;) {
                    const Token& param = expect(Tok::Ident, "parameter name");
                    if (param_set.count(param.text))
                        throw TypeError("duplicate parameter '" + param.text + "'",
                                        param.line, param.col);
                    if (consts.count(param.text))
                        throw TypeError("'" + param.text + "' is already a constant",
                                        param.line, param.col);
                    params.push_back(param.text);
                    param_set.insert(param.text);
                    if (peek().kind != Tok::Comma) break;
                    next();
                }
            }
            expect(Tok::RParen, "')'");
            expect(Tok::LBrace, "'{'");
            while (peek().kind != Tok::RBrace) {
                if (peek().kind == Tok::End)
                    throw ParseError("expected '}'", peek().line, peek().col);
                p->body.push_back(statement());
            }
            const Token& close = next();
            p->params = params;
            p->end_line = close.line;
        }
        if (!have_function) {
            const Token& t = toks.back();
            throw ParseError("no function", t.line, t.col);
        }
        p->constants = const_order;
        return p;
    }
};

}  // namespace

ProgramPtr parse_program(const std::string& source) {
    Parser parser;
    parser.toks = lex(source, 1);
    return parser.program();
}

ExprPtr parse_expression(const std::string& text, const Program& context, int line) {
    Parser parser;
    parser.toks = lex(text, line);
    parser.consts = constants_map(context);
    std::set<std::string> visible;
    for (const auto& v : live_variables_at(context, line)) visible.insert(v);
    parser.visible = &visible;
    ExprPtr e = parser.expression();
    if (parser.peek().kind != Tok::End)
        throw ParseError(std::string("unexpected trailing '") +
                             describe(parser.peek()) + "'",
                         parser.peek().line, parser.peek().col);
    return e;
}

std::vector<std::string> live_variables_at(const Program& p, int line) {
    std::vector<std::string> out = p.params;
    for (const auto& s : statements_preorder(p))
        if (s->kind == Stmt::Kind::VarDecl && s->line < line)
            out.push_back(s->target);
    return out;
}

FixLocation location_at(const Program& p, int line) {
    StmtPtr s = find_statement(p, line);
    if (!s)
        throw UnsupportedLocation("no statement at line " + std::to_string(line));
    FixLocation loc;
    loc.line = line;
    switch (s->kind) {
        case Stmt::Kind::If:
        case Stmt::Kind::While: loc.kind = LocationKind::BranchCondition; break;
        case Stmt::Kind::VarDecl:
        case Stmt::Kind::Assign: loc.kind = LocationKind::AssignmentRhs; break;
        case Stmt::Kind::Return: loc.kind = LocationKind::ReturnExpr; break;
    }
    loc.live_vars = live_variables_at(p, line);
    return loc;
}

ExprPtr expression_at(const Program& p, int line) {
    StmtPtr s = find_statement(p, line);
    if (!s)
        throw UnsupportedLocation("no statement at line " + std::to_string(line));
    return s->expr;
}

const char* location_kind_name(LocationKind kind) {
    switch (kind) {
        case LocationKind::BranchCondition: return "branch-condition";
        case LocationKind::AssignmentRhs: return "assignment-rhs";
        case LocationKind::ReturnExpr: return "return-expr";
    }
    return "?";
}

LocationKind location_kind_from_name(const std::string& s) {
    if (s == "branch-condition") return LocationKind::BranchCondition;
    if (s == "assignment-rhs") return LocationKind::AssignmentRhs;
    if (s == "return-expr") return LocationKind::ReturnExpr;
    throw std::invalid_argument("unknown location kind '" + s + "'");
}

ProgramPtr load_program(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

}  // namespace repairforge
