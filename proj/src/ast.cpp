#include "repairforge/ast.hpp"

#include <algorithm>
#include <set>

namespace repairforge {

const char* unary_token(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Not: return "!";
    }
    return "?";
}

const char* binary_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

int binary_precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 3;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 6;
    }
    return 0;
}

bool is_commutative(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
        case BinaryOp::Mul:
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::And:
        case BinaryOp::Or: return true;
        default: return false;
    }
}

bool is_arithmetic(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return true;
        default: return false;
    }
}

bool is_comparison(BinaryOp op) {
    switch (op) {
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return true;
        default: return false;
    }
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

ValueType binary_result_type(BinaryOp op) {
    return is_arithmetic(op) ? ValueType::Int : ValueType::Bool;
}

ValueType binary_operand_type(BinaryOp op) {
    return is_logical(op) ? ValueType::Bool : ValueType::Int;
}

ValueType unary_type(UnaryOp op) {
    return op == UnaryOp::Neg ? ValueType::Int : ValueType::Bool;
}

ExprPtr make_literal(std::int64_t v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Literal;
    e->type = ValueType::Int;
    e->literal = v;
    return e;
}

ExprPtr make_const_ref(const std::string& name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::ConstRef;
    e->type = ValueType::Int;
    e->name = name;
    return e;
}

ExprPtr make_var_ref(const std::string& name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::VarRef;
    e->type = ValueType::Int;
    e->name = name;
    return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Unary;
    e->type = unary_type(op);
    e->un_op = op;
    e->lhs = std::move(operand);
    return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->type = binary_result_type(op);
    e->bin_op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

int expr_size(const ExprPtr& e) {
    if (!e) return 0;
    switch (e->kind) {
        case Expr::Kind::Literal:
        case Expr::Kind::ConstRef:
        case Expr::Kind::VarRef: return 1;
        case Expr::Kind::Unary: return 1 + expr_size(e->lhs);
        case Expr::Kind::Binary: return 1 + expr_size(e->lhs) + expr_size(e->rhs);
    }
    return 0;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Literal: return a->literal == b->literal;
        case Expr::Kind::ConstRef:
        case Expr::Kind::VarRef: return a->name == b->name;
        case Expr::Kind::Unary:
            return a->un_op == b->un_op && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::Binary:
            return a->bin_op == b->bin_op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
    }
    return false;
}

StmtPtr make_var_decl(int line, std::string target, ExprPtr init) {
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::VarDecl;
    s->line = line;
    s->target = std::move(target);
    s->expr = std::move(init);
    return s;
}

StmtPtr make_assign(int line, std::string target, ExprPtr rhs) {
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Assign;
    s->line = line;
    s->target = std::move(target);
    s->expr = std::move(rhs);
    return s;
}

StmtPtr make_if(int line, ExprPtr cond, std::vector<StmtPtr> then_body,
                std::vector<StmtPtr> else_body) {
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::If;
    s->line = line;
    s->expr = std::move(cond);
    s->body = std::move(then_body);
    s->else_body = std::move(else_body);
    return s;
}

StmtPtr make_while(int line, ExprPtr cond, std::vector<StmtPtr> body) {
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::While;
    s->line = line;
    s->expr = std::move(cond);
    s->body = std::move(body);
    return s;
}

StmtPtr make_return(int line, ExprPtr value) {
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Return;
    s->line = line;
    s->expr = std::move(value);
    return s;
}

std::map<std::string, std::int64_t> constants_map(const Program& p) {
    std::map<std::string, std::int64_t> out;
    for (const auto& [name, value] : p.constants) out[name] = value;
    return out;
}

namespace {

void collect_preorder(const std::vector<StmtPtr>& stmts, std::vector<StmtPtr>& out) {
    for (const auto& s : stmts) {
        out.push_back(s);
        collect_preorder(s->body, out);
        collect_preorder(s->else_body, out);
    }
}

void collect_literals(const ExprPtr& e, std::set<std::int64_t>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Literal) out.insert(e->literal);
    collect_literals(e->lhs, out);
    collect_literals(e->rhs, out);
}

}  // namespace

std::vector<StmtPtr> statements_preorder(const Program& p) {
    std::vector<StmtPtr> out;
    collect_preorder(p.body, out);
    return out;
}

StmtPtr find_statement(const Program& p, int line) {
    for (const auto& s : statements_preorder(p))
        if (s->line == line) return s;
    return nullptr;
}

std::vector<std::int64_t> body_literals(const Program& p) {
    std::set<std::int64_t> seen;
    for (const auto& s : statements_preorder(p)) collect_literals(s->expr, seen);
    return {seen.begin(), seen.end()};
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->line != b->line || a->target != b->target)
        return false;
    if (!expr_equal(a->expr, b->expr)) return false;
    if (a->body.size() != b->body.size() ||
        a->else_body.size() != b->else_body.size())
        return false;
    for (std::size_t i = 0; i < a->body.size(); ++i)
        if (!stmt_equal(a->body[i], b->body[i])) return false;
    for (std::size_t i = 0; i < a->else_body.size(); ++i)
        if (!stmt_equal(a->else_body[i], b->else_body[i])) return false;
    return true;
}

bool program_equal(const Program& a, const Program& b) {
    if (a.function_name != b.function_name || a.params != b.params ||
        a.constants != b.constants || a.body.size() != b.body.size())
        return false;
    for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!stmt_equal(a.body[i], b.body[i])) return false;
    return true;
}

}  // namespace repairforge
