#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_set>

#include "repairforge/synth.hpp"

namespace repairforge {

namespace {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                     static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                     static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                     static_cast<std::uint64_t>(b));
}
std::int64_t wrap_neg(std::int64_t a) {
    return static_cast<std::int64_t>(-static_cast<std::uint64_t>(a));
}

constexpr std::int64_t kMinInt = std::numeric_limits<std::int64_t>::min();

// Values of one candidate across the constraint's unique environments.
// err marks coordinates where evaluation fails (missing variable, division
// by zero); failure in any operand poisons the result.
struct Vec {
    ValueType type = ValueType::Int;
    std::vector<std::int64_t> v;
    std::vector<std::uint8_t> err;
};

bool vec_equal(const Vec& a, const Vec& b) {
    return a.type == b.type && a.err == b.err && a.v == b.v;
}

std::size_t vec_hash(const Vec& a) {
    std::size_t h = a.type == ValueType::Bool ? 0x9e3779b97f4a7c15ULL : 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        std::size_t x = a.err[i] ? 0x7f4a7c159e3779b9ULL
                                 : static_cast<std::size_t>(
                                       static_cast<std::uint64_t>(a.v[i]));
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// The traversal shared by the pruned engine and the unpruned oracle: sizes
// ascending; per size the integer productions then the boolean ones; unary
// before binary; binary operators outermost in declared order, splits with
// the larger left side first; commutative operators take each unordered
// pair once, diagonally when both operands come from the same bank.
template <class Policy>
bool binary_block(BinaryOp op, ValueType operand, int s, Policy& pol) {
    bool comm = is_commutative(op);
    for (int ls = s - 2; ls >= 1; --ls) {
        int rs = s - 1 - ls;
        if (comm && ls < rs) continue;
        std::size_t nl = pol.bank_size(operand, ls);
        std::size_t nr = pol.bank_size(operand, rs);
        if (comm && ls == rs) {
            for (std::size_t d = 0; d < nl; ++d)
                for (std::size_t i = 0; i + d < nl; ++i)
                    if (pol.binary(op, operand, ls, i, rs, i + d)) return true;
        } else {
            for (std::size_t li = 0; li < nl; ++li)
                for (std::size_t ri = 0; ri < nr; ++ri)
                    if (pol.binary(op, operand, ls, li, rs, ri)) return true;
        }
    }
    return false;
}

template <class Policy>
void enumerate_core(const ComponentSet& comps, ValueType target, int max_size,
                    Policy& pol) {
    for (int s = 1; s <= max_size; ++s) {
        if (s == 1) {
            for (const std::string& v : comps.variables)
                if (pol.leaf_var(v)) return;
            for (std::int64_t k : comps.constants)
                if (pol.leaf_const(k)) return;
            continue;
        }
        for (UnaryOp op : comps.int_unary)
            for (std::size_t i = 0; i < pol.bank_size(ValueType::Int, s - 1); ++i)
                if (pol.unary(op, ValueType::Int, s - 1, i)) return;
        for (BinaryOp op : comps.int_ops)
            if (binary_block(op, ValueType::Int, s, pol)) return;
        if (target != ValueType::Bool) continue;
        for (UnaryOp op : comps.bool_unary)
            for (std::size_t i = 0; i < pol.bank_size(ValueType::Bool, s - 1); ++i)
                if (pol.unary(op, ValueType::Bool, s - 1, i)) return;
        for (BinaryOp op : comps.cmp_ops)
            if (binary_block(op, ValueType::Int, s, pol)) return;
        for (BinaryOp op : comps.logic_ops)
            if (binary_block(op, ValueType::Bool, s, pol)) return;
    }
}

struct CompiledEval {
    std::uint32_t env;
    Value forced;
};
using CompiledPath = std::vector<CompiledEval>;
using CompiledForest = std::vector<CompiledPath>;

struct PrunedEngine {
    const RepairConstraint& c;
    const SynthLimits& limits;
    ValueType target;

    std::vector<std::map<std::string, std::int64_t>> envs;
    std::vector<CompiledForest> forests;

    std::vector<Vec> vecs;  // interned value vectors
    struct ArenaHash {
        const std::vector<Vec>* arena;
        std::size_t operator()(std::uint32_t i) const { return vec_hash((*arena)[i]); }
    };
    struct ArenaEq {
        const std::vector<Vec>* arena;
        bool operator()(std::uint32_t a, std::uint32_t b) const {
            return vec_equal((*arena)[a], (*arena)[b]);
        }
    };
    std::unordered_set<std::uint32_t, ArenaHash, ArenaEq> seen;

    struct Entry {
        ExprPtr expr;
        std::uint32_t vec;
    };
    std::vector<std::vector<Entry>> int_bank;
    std::vector<std::vector<Entry>> bool_bank;

    long visits = 0;
    bool capped = false;
    std::optional<SynthResult> found;

    explicit PrunedEngine(const RepairConstraint& c_, const SynthLimits& lim)
        : c(c_),
          limits(lim),
          target(c_.value_kind),
          seen(64, ArenaHash{&vecs}, ArenaEq{&vecs}) {
        std::map<std::map<std::string, std::int64_t>, std::uint32_t> index;
        for (const AngelicForest& f : c.forests) {
            CompiledForest cf;
            for (const AngelicPath& path : f.paths) {
                CompiledPath cp;
                for (std::size_t j = 0; j < path.records.size(); ++j) {
                    auto [it, inserted] = index.try_emplace(
                        path.records[j].env,
                        static_cast<std::uint32_t>(envs.size()));
                    if (inserted) envs.push_back(path.records[j].env);
                    cp.push_back({it->second, path.forced[j]});
                }
                cf.push_back(std::move(cp));
            }
            forests.push_back(std::move(cf));
        }
    }

    std::vector<std::vector<Entry>>& bank(ValueType t) {
        return t == ValueType::Int ? int_bank : bool_bank;
    }
    std::size_t bank_size(ValueType t, int size) {
        auto& b = bank(t);
        if (static_cast<std::size_t>(size) >= b.size()) return 0;
        return b[static_cast<std::size_t>(size)].size();
    }
    Entry& at(ValueType t, int size, std::size_t i) {
        return bank(t)[static_cast<std::size_t>(size)][i];
    }

    bool satisfies(const Vec& vec) const {
        for (const CompiledForest& forest : forests) {
            bool any = false;
            for (const CompiledPath& path : forest) {
                bool all = true;
                for (const CompiledEval& ev : path) {
                    if (vec.err[ev.env]) {
                        all = false;
                        break;
                    }
                    std::int64_t want = target == ValueType::Bool
                                            ? (ev.forced.b ? 1 : 0)
                                            : ev.forced.i;
                    if (vec.v[ev.env] != want) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    any = true;
                    break;
                }
            }
            if (!any) return false;
        }
        return true;
    }

    // Visits one candidate. Returns true to stop the traversal.
    bool step(ExprPtr expr, Vec vec, int size) {
        ++visits;
        if (visits > limits.max_visits) {
            capped = true;
            return true;
        }
        vecs.push_back(std::move(vec));
        std::uint32_t idx = static_cast<std::uint32_t>(vecs.size() - 1);
        auto [it, inserted] = seen.insert(idx);
        if (!inserted) {
            vecs.pop_back();
            return false;  // equal-valued candidate already failed
        }
        const Vec& stored = vecs[idx];
        if (stored.type == target && satisfies(stored)) {
            SynthResult r;
            r.status = SynthStatus::Found;
            r.expr = std::move(expr);
            r.size = size;
            found = r;
            return true;
        }
        auto& b = bank(stored.type);
        if (b.size() <= static_cast<std::size_t>(size))
            b.resize(static_cast<std::size_t>(size) + 1);
        b[static_cast<std::size_t>(size)].push_back({std::move(expr), idx});
        return false;
    }

    bool leaf_var(const std::string& name) {
        Vec vec;
        vec.type = ValueType::Int;
        vec.v.resize(envs.size());
        vec.err.resize(envs.size());
        for (std::size_t i = 0; i < envs.size(); ++i) {
            auto it = envs[i].find(name);
            if (it == envs[i].end())
                vec.err[i] = 1;
            else
                vec.v[i] = it->second;
        }
        return step(make_var_ref(name), std::move(vec), 1);
    }

    bool leaf_const(std::int64_t k) {
        Vec vec;
        vec.type = ValueType::Int;
        vec.v.assign(envs.size(), k);
        vec.err.assign(envs.size(), 0);
        return step(make_literal(k), std::move(vec), 1);
    }

    bool unary(UnaryOp op, ValueType operand, int child_size, std::size_t i) {
        const Entry& e = at(operand, child_size, i);
        const Vec& cv = vecs[e.vec];
        Vec vec;
        vec.type = operand;
        vec.v.resize(envs.size());
        vec.err = cv.err;
        for (std::size_t k = 0; k < envs.size(); ++k) {
            if (vec.err[k]) continue;
            vec.v[k] = op == UnaryOp::Neg ? wrap_neg(cv.v[k]) : !cv.v[k];
        }
        return step(make_unary(op, e.expr), std::move(vec), child_size + 1);
    }

    bool binary(BinaryOp op, ValueType operand, int ls, std::size_t li, int rs,
                std::size_t ri) {
        const Entry& l = at(operand, ls, li);
        const Entry& r = at(operand, rs, ri);
        const Vec& lv = vecs[l.vec];
        const Vec& rv = vecs[r.vec];
        Vec vec;
        vec.type = binary_result_type(op);
        vec.v.resize(envs.size());
        vec.err.resize(envs.size());
        for (std::size_t k = 0; k < envs.size(); ++k) {
            if (lv.err[k] || rv.err[k]) {
                vec.err[k] = 1;
                continue;
            }
            std::int64_t a = lv.v[k];
            std::int64_t b = rv.v[k];
            switch (op) {
                case BinaryOp::Add: vec.v[k] = wrap_add(a, b); break;
                case BinaryOp::Sub: vec.v[k] = wrap_sub(a, b); break;
                case BinaryOp::Mul: vec.v[k] = wrap_mul(a, b); break;
                case BinaryOp::Div:
                    if (b == 0)
                        vec.err[k] = 1;
                    else
                        vec.v[k] = a == kMinInt && b == -1 ? kMinInt : a / b;
                    break;
                case BinaryOp::Mod:
                    if (b == 0)
                        vec.err[k] = 1;
                    else
                        vec.v[k] = a == kMinInt && b == -1 ? 0 : a % b;
                    break;
                case BinaryOp::Eq: vec.v[k] = a == b; break;
                case BinaryOp::Ne: vec.v[k] = a != b; break;
                case BinaryOp::Lt: vec.v[k] = a < b; break;
                case BinaryOp::Le: vec.v[k] = a <= b; break;
                case BinaryOp::Gt: vec.v[k] = a > b; break;
                case BinaryOp::Ge: vec.v[k] = a >= b; break;
                case BinaryOp::And: vec.v[k] = a && b; break;
                case BinaryOp::Or: vec.v[k] = a || b; break;
            }
        }
        return step(make_binary(op, l.expr, r.expr), std::move(vec), ls + rs + 1);
    }
};

struct FullEnumerator {
    ValueType target;
    std::size_t cap;
    std::vector<std::vector<std::vector<ExprPtr>>> banks;  // [type][size]
    std::vector<ExprPtr> out;
    std::size_t built = 0;

    FullEnumerator(ValueType t, std::size_t cap_) : target(t), cap(cap_) {
        banks.resize(2);
    }

    std::vector<std::vector<ExprPtr>>& bank(ValueType t) {
        return banks[t == ValueType::Int ? 0 : 1];
    }
    std::size_t bank_size(ValueType t, int size) {
        auto& b = bank(t);
        if (static_cast<std::size_t>(size) >= b.size()) return 0;
        return b[static_cast<std::size_t>(size)].size();
    }

    bool keep(ExprPtr e, int size) {
        if (++built > cap)
            throw std::length_error("expression enumeration exceeded its cap");
        if (e->type == target) out.push_back(e);
        auto& b = bank(e->type);
        if (b.size() <= static_cast<std::size_t>(size))
            b.resize(static_cast<std::size_t>(size) + 1);
        b[static_cast<std::size_t>(size)].push_back(std::move(e));
        return false;
    }

    bool leaf_var(const std::string& name) { return keep(make_var_ref(name), 1); }
    bool leaf_const(std::int64_t k) { return keep(make_literal(k), 1); }
    bool unary(UnaryOp op, ValueType operand, int child_size, std::size_t i) {
        return keep(make_unary(op, bank(operand)[static_cast<std::size_t>(
                                        child_size)][i]),
                    child_size + 1);
    }
    bool binary(BinaryOp op, ValueType operand, int ls, std::size_t li, int rs,
                std::size_t ri) {
        return keep(
            make_binary(op, bank(operand)[static_cast<std::size_t>(ls)][li],
                        bank(operand)[static_cast<std::size_t>(rs)][ri]),
            ls + rs + 1);
    }
};

}  // namespace

ComponentSet default_components(const RepairConstraint& c, bool include_div) {
    ComponentSet cs;
    cs.variables = c.location.live_vars;
    cs.constants = c.constant_pool;
    std::sort(cs.constants.begin(), cs.constants.end());
    cs.constants.erase(std::unique(cs.constants.begin(), cs.constants.end()),
                       cs.constants.end());
    if (c.value_kind == ValueType::Int) {
        cs.int_unary = {UnaryOp::Neg};
        cs.int_ops = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
        if (include_div) {
            cs.int_ops.push_back(BinaryOp::Div);
            cs.int_ops.push_back(BinaryOp::Mod);
        }
    } else {
        cs.cmp_ops = {BinaryOp::Eq, BinaryOp::Ne};
        cs.logic_ops = {BinaryOp::And, BinaryOp::Or};
    }
    return cs;
}

SynthResult synthesize(const RepairConstraint& c, const ComponentSet& comps,
                       const SynthLimits& limits) {
    PrunedEngine engine(c, limits);
    enumerate_core(comps, c.value_kind, limits.max_size, engine);
    if (engine.found) {
        SynthResult r = *engine.found;
        r.visits = engine.visits;
        r.capped = false;
        return r;
    }
    SynthResult r;
    r.status = SynthStatus::Exhausted;
    r.visits = engine.visits;
    r.capped = engine.capped;
    return r;
}

std::vector<ExprPtr> enumerate_expressions(const ComponentSet& comps,
                                           ValueType target, int max_size,
                                           std::size_t cap) {
    FullEnumerator full(target, cap);
    enumerate_core(comps, target, max_size, full);
    return std::move(full.out);
}

}  // namespace repairforge
