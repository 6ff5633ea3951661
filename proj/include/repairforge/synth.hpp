#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repairforge/symexec.hpp"

namespace repairforge {

// Building blocks for candidate expressions. Vectors keep their enumeration
// order: variables as listed, constants ascending, operators as declared.
struct ComponentSet {
    std::vector<std::string> variables;
    std::vector<std::int64_t> constants;
    std::vector<UnaryOp> int_unary;
    std::vector<BinaryOp> int_ops;    // arithmetic
    std::vector<BinaryOp> cmp_ops;    // integer comparisons
    std::vector<BinaryOp> logic_ops;  // boolean connectives
    std::vector<UnaryOp> bool_unary;
};

// Integer slots get the arithmetic components; boolean slots get equality
// comparisons and connectives over bare variables and constants.
ComponentSet default_components(const RepairConstraint& c, bool include_div);

struct SynthLimits {
    int max_size = 11;
    long max_visits = 3000000;
};

enum class SynthStatus { Found, Exhausted };

struct SynthResult {
    SynthStatus status = SynthStatus::Exhausted;
    ExprPtr expr;       // Found
    int size = 0;       // Found
    long visits = 0;    // candidates examined
    bool capped = false;  // stopped by max_visits, space not exhausted
};

// Size-ordered enumerative search for the first expression satisfying the
// constraint, pruning candidates whose value vector over the constraint's
// environments matches an earlier one. A Found result is minimal: no smaller
// expression over the same components satisfies the constraint.
SynthResult synthesize(const RepairConstraint& c, const ComponentSet& comps,
                       const SynthLimits& limits);

// Every expression of the target type up to max_size, unpruned, in the exact
// candidate order synthesize examines. Oracle for minimality checks.
std::vector<ExprPtr> enumerate_expressions(const ComponentSet& comps,
                                           ValueType target, int max_size,
                                           std::size_t cap = 2000000);

}  // namespace repairforge
