#include <limits>
#include <stdexcept>

#include "repairforge/interp.hpp"

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

struct DivByZeroSignal {};

// Division truncates toward zero; the one overflowing case saturates so the
// result stays defined.
std::int64_t checked_div(std::int64_t a, std::int64_t b) {
    if (b == 0) throw DivByZeroSignal{};
    if (a == kMinInt && b == -1) return kMinInt;
    return a / b;
}
std::int64_t checked_mod(std::int64_t a, std::int64_t b) {
    if (b == 0) throw DivByZeroSignal{};
    if (a == kMinInt && b == -1) return 0;
    return a % b;
}

struct UninitializedSignal {
    std::string name;
};

Value eval_expr(const Expr& e,
                const std::map<std::string, std::int64_t>& env,
                const std::map<std::string, std::int64_t>& consts) {
    switch (e.kind) {
        case Expr::Kind::Literal:
            return Value::of_int(e.literal);
        case Expr::Kind::ConstRef: {
            auto it = consts.find(e.name);
            if (it == consts.end()) throw UninitializedSignal{e.name};
            return Value::of_int(it->second);
        }
        case Expr::Kind::VarRef: {
            auto it = env.find(e.name);
            if (it == env.end()) throw UninitializedSignal{e.name};
            return Value::of_int(it->second);
        }
        case Expr::Kind::Unary: {
            Value v = eval_expr(*e.lhs, env, consts);
            if (e.un_op == UnaryOp::Neg) return Value::of_int(wrap_neg(v.i));
            return Value::of_bool(!v.b);
        }
        case Expr::Kind::Binary: {
            if (e.bin_op == BinaryOp::And) {
                Value l = eval_expr(*e.lhs, env, consts);
                if (!l.b) return Value::of_bool(false);
                return Value::of_bool(eval_expr(*e.rhs, env, consts).b);
            }
            if (e.bin_op == BinaryOp::Or) {
                Value l = eval_expr(*e.lhs, env, consts);
                if (l.b) return Value::of_bool(true);
                return Value::of_bool(eval_expr(*e.rhs, env, consts).b);
            }
            Value l = eval_expr(*e.lhs, env, consts);
            Value r = eval_expr(*e.rhs, env, consts);
            switch (e.bin_op) {
                case BinaryOp::Add: return Value::of_int(wrap_add(l.i, r.i));
                case BinaryOp::Sub: return Value::of_int(wrap_sub(l.i, r.i));
                case BinaryOp::Mul: return Value::of_int(wrap_mul(l.i, r.i));
                case BinaryOp::Div: return Value::of_int(checked_div(l.i, r.i));
                case BinaryOp::Mod: return Value::of_int(checked_mod(l.i, r.i));
                case BinaryOp::Eq: return Value::of_bool(l.i == r.i);
                case BinaryOp::Ne: return Value::of_bool(l.i != r.i);
                case BinaryOp::Lt: return Value::of_bool(l.i < r.i);
                case BinaryOp::Le: return Value::of_bool(l.i <= r.i);
                case BinaryOp::Gt: return Value::of_bool(l.i > r.i);
                case BinaryOp::Ge: return Value::of_bool(l.i >= r.i);
                default: break;
            }
            return Value::of_bool(false);
        }
    }
    return Value::of_int(0);
}

struct AbortRun {};
struct ReturnTaken {
    std::int64_t value;
};

struct Machine {
    const Program& p;
    const Probe* probe;
    std::size_t budget;
    std::map<std::string, std::int64_t> consts;
    std::map<std::string, std::int64_t> env;
    RunResult res;
    int cur_line = 0;

    void fail(ErrorKind kind, int line) {
        res.status = RunStatus::RuntimeError;
        res.error = kind;
        res.error_line = line;
        throw AbortRun{};
    }

    void count_step(int line) {
        cur_line = line;
        res.coverage.insert(line);
        ++res.steps;
        if (res.steps > budget) {
            res.status = RunStatus::BoundExceeded;
            throw AbortRun{};
        }
    }

    Value eval(const ExprPtr& e) {
        try {
            return eval_expr(*e, env, consts);
        } catch (const DivByZeroSignal&) {
            fail(ErrorKind::DivByZero, cur_line);
        } catch (const UninitializedSignal&) {
            fail(ErrorKind::Uninitialized, cur_line);
        }
        return Value::of_int(0);
    }

    // The expression slot of the statement at the probed line yields scripted
    // values instead of evaluating.
    Value eval_slot(const Stmt& s) {
        if (probe && s.line == probe->line) {
            EvalRecord rec;
            rec.line = s.line;
            for (const std::string& name : probe->live_vars) {
                auto it = env.find(name);
                if (it != env.end()) rec.env.emplace(name, it->second);
            }
            res.records.push_back(std::move(rec));
            if (res.consumed == probe->script.size()) {
                res.status = RunStatus::ProbeStarved;
                throw AbortRun{};
            }
            return probe->script[res.consumed++];
        }
        return eval(s.expr);
    }

    void exec_block(const std::vector<StmtPtr>& body) {
        for (const StmtPtr& s : body) exec(*s);
    }

    void exec(const Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::VarDecl:
            case Stmt::Kind::Assign: {
                count_step(s.line);
                Value v = eval_slot(s);
                env[s.target] = v.i;
                return;
            }
            case Stmt::Kind::If: {
                count_step(s.line);
                Value c = eval_slot(s);
                exec_block(c.b ? s.body : s.else_body);
                return;
            }
            case Stmt::Kind::While: {
                for (;;) {
                    count_step(s.line);
                    Value c = eval_slot(s);
                    if (!c.b) return;
                    exec_block(s.body);
                }
            }
            case Stmt::Kind::Return: {
                count_step(s.line);
                Value v = eval_slot(s);
                throw ReturnTaken{v.i};
            }
        }
    }
};

}  // namespace

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Returned: return "returned";
        case RunStatus::RuntimeError: return "runtime-error";
        case RunStatus::BoundExceeded: return "bound-exceeded";
        case RunStatus::ProbeStarved: return "probe-starved";
    }
    return "?";
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivByZero: return "div-by-zero";
        case ErrorKind::Uninitialized: return "uninitialized";
        case ErrorKind::NoReturn: return "no-return";
    }
    return "?";
}

RunResult run_program(const Program& p, const std::vector<std::int64_t>& args,
                      const Probe* probe, std::size_t step_budget) {
    if (args.size() != p.params.size())
        throw std::invalid_argument("argument count does not match parameters");
    Machine m{p, probe, step_budget, constants_map(p), {}, {}, 0};
    for (std::size_t i = 0; i < args.size(); ++i) m.env[p.params[i]] = args[i];
    try {
        m.exec_block(p.body);
        m.res.status = RunStatus::RuntimeError;
        m.res.error = ErrorKind::NoReturn;
        m.res.error_line = p.end_line;
    } catch (const ReturnTaken& r) {
        m.res.status = RunStatus::Returned;
        m.res.value = r.value;
    } catch (const AbortRun&) {
    }
    return m.res;
}

EvalOutcome eval_in_env(const ExprPtr& e,
                        const std::map<std::string, std::int64_t>& env,
                        const std::map<std::string, std::int64_t>& consts) {
    EvalOutcome out;
    try {
        out.value = eval_expr(*e, env, consts);
        out.ok = true;
    } catch (const DivByZeroSignal&) {
    } catch (const UninitializedSignal&) {
    }
    return out;
}

}  // namespace repairforge
