#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace repairforge {

enum class ValueType { Int, Bool };

// Runtime value. MiniLang variables and function results are always Int;
// Bool values exist only inside expression evaluation.
struct Value {
    ValueType type = ValueType::Int;
    std::int64_t i = 0;
    bool b = false;

    static Value of_int(std::int64_t v) {
        Value out;
        out.type = ValueType::Int;
        out.i = v;
        return out;
    }
    static Value of_bool(bool v) {
        Value out;
        out.type = ValueType::Bool;
        out.b = v;
        return out;
    }
};

inline bool operator==(const Value& a, const Value& b) {
    if (a.type != b.type) return false;
    return a.type == ValueType::Int ? a.i == b.i : a.b == b.b;
}
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

enum class UnaryOp { Neg, Not };

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* unary_token(UnaryOp op);
const char* binary_token(BinaryOp op);

// Higher value binds tighter. Every binary operator is left-associative.
int binary_precedence(BinaryOp op);

bool is_commutative(BinaryOp op);
bool is_arithmetic(BinaryOp op);  // int x int -> int
bool is_comparison(BinaryOp op);  // int x int -> bool
bool is_logical(BinaryOp op);     // bool x bool -> bool

ValueType binary_result_type(BinaryOp op);
ValueType binary_operand_type(BinaryOp op);
ValueType unary_type(UnaryOp op);  // operand type == result type

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Literal, ConstRef, VarRef, Unary, Binary };

    Kind kind = Kind::Literal;
    ValueType type = ValueType::Int;
    std::int64_t literal = 0;  // Kind::Literal
    std::string name;          // Kind::ConstRef / Kind::VarRef
    UnaryOp un_op = UnaryOp::Neg;
    BinaryOp bin_op = BinaryOp::Add;
    ExprPtr lhs;  // Unary operand lives here
    ExprPtr rhs;
};

ExprPtr make_literal(std::int64_t v);
ExprPtr make_const_ref(const std::string& name);
ExprPtr make_var_ref(const std::string& name);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

// Number of tree nodes; size(binary(l, r)) == 1 + size(l) + size(r).
int expr_size(const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { VarDecl, Assign, If, While, Return };

    Kind kind = Kind::Return;
    // Physical source line of the statement's first token. Unique within a
    // program and strictly increasing in preorder.
    int line = 0;
    std::string target;             // VarDecl / Assign
    ExprPtr expr;                   // init, rhs, condition, or return value
    std::vector<StmtPtr> body;      // If then-branch, While body
    std::vector<StmtPtr> else_body; // If only
};

StmtPtr make_var_decl(int line, std::string target, ExprPtr init);
StmtPtr make_assign(int line, std::string target, ExprPtr rhs);
StmtPtr make_if(int line, ExprPtr cond, std::vector<StmtPtr> then_body,
                std::vector<StmtPtr> else_body);
StmtPtr make_while(int line, ExprPtr cond, std::vector<StmtPtr> body);
StmtPtr make_return(int line, ExprPtr value);

struct Program {
    std::string function_name;
    std::vector<std::string> params;
    std::vector<StmtPtr> body;
    // Declaration order preserved; values are plain integers.
    std::vector<std::pair<std::string, std::int64_t>> constants;
    int function_line = 1;  // line of the `function` keyword
    int end_line = 0;       // line of the function's closing brace
};
using ProgramPtr = std::shared_ptr<const Program>;

std::map<std::string, std::int64_t> constants_map(const Program& p);

// All statements in preorder (textual order). Lines are strictly increasing.
std::vector<StmtPtr> statements_preorder(const Program& p);

// Statement whose line equals `line`, or nullptr.
StmtPtr find_statement(const Program& p, int line);

// Integer literals appearing lexically in the function body, sorted and
// deduplicated. Declared constant values are not included.
std::vector<std::int64_t> body_literals(const Program& p);

bool stmt_equal(const StmtPtr& a, const StmtPtr& b);
bool program_equal(const Program& a, const Program& b);

}  // namespace repairforge
