#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "repairforge/ast.hpp"

namespace repairforge {

struct SourceError : std::runtime_error {
    int line;
    int col;
    SourceError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_),
          col(col_) {}
};

struct ParseError : SourceError {
    using SourceError::SourceError;
};

struct TypeError : SourceError {
    using SourceError::SourceError;
};

enum class LocationKind { BranchCondition, AssignmentRhs, ReturnExpr };

const char* location_kind_name(LocationKind kind);           // "branch-condition", ...
LocationKind location_kind_from_name(const std::string& s);  // throws std::invalid_argument

// A single repairable expression slot: the condition of an if/while, the
// right-hand side of a declaration/assignment, or a return value.
struct FixLocation {
    int line = 0;
    LocationKind kind = LocationKind::BranchCondition;
    // Parameters first (declaration order), then locals declared on earlier
    // lines (line order). The variable declared at `line` itself is excluded.
    std::vector<std::string> live_vars;
};

struct Patch {
    FixLocation location;
    ExprPtr original;
    ExprPtr replacement;
};

struct LocationMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedLocation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses one MiniLang source file: exactly one function plus any number of
// `const NAME = int;` declarations. Statement lines match the physical source.
// Rejects duplicate declarations, unknown names, and ill-typed expressions.
ProgramPtr parse_program(const std::string& source);

// Parses a standalone expression as if it appeared at `line` of `context`:
// identifiers resolve to the variables live there or to declared constants.
ExprPtr parse_expression(const std::string& text, const Program& context, int line);

// Canonical rendering: 4-space indent, mandatory braces, one statement per
// line, every statement emitted on its recorded source line, constants after
// the function. Re-parsing yields a structurally equal program with identical
// line identities.
std::string pretty_print(const Program& p);

std::string print_expression(const ExprPtr& e);

std::vector<std::string> live_variables_at(const Program& p, int line);

// FixLocation for the statement at `line`; throws UnsupportedLocation when no
// statement starts there.
FixLocation location_at(const Program& p, int line);

// The patchable expression of the statement at `line`.
ExprPtr expression_at(const Program& p, int line);

// Returns a new program with the located expression replaced. Throws
// LocationMismatch when the location or the recorded original expression does
// not match, TypeError when the replacement is ill-typed for the slot or
// references names not in scope.
ProgramPtr apply_patch(const Program& p, const Patch& patch);

// Number of statements whose top-level expression differs structurally.
// Statement tree shape must match; returns -1 when it does not.
int count_differing_statement_exprs(const Program& a, const Program& b);

// Unified diff over pretty-printed sources, headed `--- <path>` and
// `+++ <path>.repaired`, three context lines. Empty when the printed forms
// are identical.
std::string diff_programs(const Program& before, const Program& after,
                          const std::string& path);

// Reads and parses a source file; throws std::runtime_error on I/O failure.
ProgramPtr load_program(const std::string& path);

}  // namespace repairforge
