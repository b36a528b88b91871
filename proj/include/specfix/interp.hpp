#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "specfix/ast.hpp"
#include "specfix/overflow.hpp"

namespace specfix {

// Evaluation semantics, per assignment target width:
//   Wrapped      every operation result and the stored value wrap to the
//                target's two's-complement range (executable C behavior).
//   Checked      the isOverflow preconditions are evaluated before each
//                operation; a fired rule stops the run with an overflow trap.
//   Mathematical unbounded integers (oracle use only).
// Condition arithmetic is always exact: comparisons do not store values, so
// the detection rules do not apply to them.
enum class Mode { Wrapped, Checked, Mathematical };

enum class RunStatus { Halted, FuelExhausted, OverflowTrap, RuntimeError, Aborted };

inline const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Halted: return "halted";
    case RunStatus::FuelExhausted: return "fuel-exhausted";
    case RunStatus::OverflowTrap: return "overflow-trap";
    case RunStatus::RuntimeError: return "runtime-error";
    case RunStatus::Aborted: return "aborted";
  }
  return "?";
}

using Store = std::map<std::string, Value>;

struct TrapInfo {
  int stmt_id = -1;
  // Index into split(rhs); split size means the assignment itself narrowed a
  // value that no operation rule fired on (bare constant or wider copy).
  int sub_index = -1;
  OverflowKind kind = OverflowKind::None;
};

struct RunOutcome {
  RunStatus status = RunStatus::Halted;
  Store store;
  long long steps = 0;
  std::optional<TrapInfo> trap;
  std::string error;
  int error_stmt = -1;
};

struct RunHooks {
  // Called on every arrival at a loop head, before the condition evaluates.
  // Returning true aborts the run (RunStatus::Aborted).
  std::function<bool(int loop_id, const Store&)> on_loop_head;
  // Called after each assignment commits.
  std::function<void(int stmt_id, const std::string& var, Value v)> on_assign;
};

inline constexpr long long kDefaultFuel = 1'000'000;

namespace detail {

class TreeWalk {
 public:
  TreeWalk(const Program& p, Mode mode, RuleMode rules, long long fuel,
           const RunHooks* hooks)
      : p_(p), mode_(mode), rules_(rules), fuel_(fuel), hooks_(hooks) {}

  RunOutcome run(const Store& input) {
    for (const auto& d : p_.decls) {
      if (!d.is_input) continue;
      auto it = input.find(d.name);
      if (it == input.end())
        return fail_global("missing input variable '" + d.name + "'");
      if (!in_range(it->second, d.width))
        return fail_global("input value out of range for '" + d.name + "'");
      out_.store[d.name] = it->second;
    }
    for (const auto& kv : input) {
      const Decl* d = p_.find_decl(kv.first);
      if (!d || !d->is_input)
        return fail_global("'" + kv.first + "' is not an input variable");
    }
    Flow f = exec_list(p_.body);
    if (f == Flow::Next || f == Flow::Returned)
      out_.status = RunStatus::Halted;
    return std::move(out_);
  }

 private:
  enum class Flow { Next, Returned, Stop };

  RunOutcome fail_global(const std::string& msg) {
    out_.status = RunStatus::RuntimeError;
    out_.error = msg;
    return std::move(out_);
  }

  bool spend_fuel() {
    if (fuel_ <= 0) {
      out_.status = RunStatus::FuelExhausted;
      return false;
    }
    --fuel_;
    ++out_.steps;
    return true;
  }

  Flow runtime_error(int stmt_id, const std::string& msg) {
    out_.status = RunStatus::RuntimeError;
    out_.error = msg;
    out_.error_stmt = stmt_id;
    return Flow::Stop;
  }

  Flow exec_list(const std::vector<Stmt>& list) {
    for (const auto& s : list) {
      Flow f = exec(s);
      if (f != Flow::Next) return f;
    }
    return Flow::Next;
  }

  Flow exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        if (!spend_fuel()) return Flow::Stop;
        const Width w = p_.width_of(s.target);
        sub_index_ = 0;
        std::optional<Value> v = eval_assign(*s.rhs, w, s.id);
        if (!v) return Flow::Stop;
        Value stored = *v;
        if (mode_ == Mode::Wrapped) {
          stored = wrap_to(stored, w);
        } else if (mode_ == Mode::Checked && !in_range(stored, w)) {
          out_.status = RunStatus::OverflowTrap;
          out_.trap = TrapInfo{s.id, sub_index_,
                               stored > intmax(w) ? OverflowKind::IO
                                                  : OverflowKind::IU};
          return Flow::Stop;
        }
        out_.store[s.target] = stored;
        if (hooks_ && hooks_->on_assign)
          hooks_->on_assign(s.id, s.target, stored);
        return Flow::Next;
      }
      case Stmt::Kind::While: {
        while (true) {
          if (hooks_ && hooks_->on_loop_head &&
              hooks_->on_loop_head(s.id, out_.store)) {
            out_.status = RunStatus::Aborted;
            return Flow::Stop;
          }
          if (!spend_fuel()) return Flow::Stop;
          std::optional<bool> c = eval_cond(*s.cond, s.id);
          if (!c) return Flow::Stop;
          if (!*c) return Flow::Next;
          Flow f = exec_list(s.body);
          if (f != Flow::Next) return f;
        }
      }
      case Stmt::Kind::If: {
        if (!spend_fuel()) return Flow::Stop;
        std::optional<bool> c = eval_cond(*s.cond, s.id);
        if (!c) return Flow::Stop;
        return exec_list(*c ? s.body : s.else_body);
      }
      case Stmt::Kind::Return:
        if (!spend_fuel()) return Flow::Stop;
        return Flow::Returned;
    }
    return Flow::Next;
  }

  // Assignment right-hand side, evaluated at the target width w. sub_index_
  // walks the split order so a trap can name the firing sub-expression.
  std::optional<Value> eval_assign(const Expr& e, Width w, int stmt_id) {
    switch (e.kind) {
      case Expr::Kind::Const:
        return e.value;
      case Expr::Kind::Var:
        return read_var(e.name, stmt_id);
      case Expr::Kind::Bin: {
        std::optional<Value> l = eval_assign(*e.lhs, w, stmt_id);
        if (!l) return std::nullopt;
        std::optional<Value> r = eval_assign(*e.rhs, w, stmt_id);
        if (!r) return std::nullopt;
        const int my_index = sub_index_++;
        if (e.op == '/') {
          if (*r == 0) {
            runtime_error(stmt_id, "division by zero");
            return std::nullopt;
          }
          if (mode_ == Mode::Checked && *l == intmin(w) && *r == -1) {
            out_.status = RunStatus::OverflowTrap;
            out_.trap = TrapInfo{stmt_id, my_index, OverflowKind::IO};
            return std::nullopt;
          }
          Value q = *l / *r;
          return mode_ == Mode::Wrapped ? wrap_to(q, w) : q;
        }
        if (mode_ == Mode::Checked) {
          OverflowKind k = check_op(e.op, *l, *r, w, rules_);
          if (k != OverflowKind::None) {
            out_.status = RunStatus::OverflowTrap;
            out_.trap = TrapInfo{stmt_id, my_index, k};
            return std::nullopt;
          }
        }
        std::optional<Value> v = apply(e.op, *l, *r, stmt_id);
        if (!v) return std::nullopt;
        return mode_ == Mode::Wrapped ? wrap_to(*v, w) : *v;
      }
    }
    return std::nullopt;
  }

  std::optional<Value> apply(char op, Value l, Value r, int stmt_id) {
    Value v = 0;
    bool ovf = false;
    switch (op) {
      case '+': ovf = __builtin_add_overflow(l, r, &v); break;
      case '-': ovf = __builtin_sub_overflow(l, r, &v); break;
      case '*': ovf = __builtin_mul_overflow(l, r, &v); break;
      default: return std::nullopt;
    }
    if (ovf) {
      runtime_error(stmt_id, "value magnitude exceeds interpreter limit");
      return std::nullopt;
    }
    return v;
  }

  std::optional<Value> read_var(const std::string& name, int stmt_id) {
    auto it = out_.store.find(name);
    if (it == out_.store.end()) {
      runtime_error(stmt_id, "read of unassigned variable '" + name + "'");
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<Value> eval_math(const Expr& e, int stmt_id) {
    switch (e.kind) {
      case Expr::Kind::Const:
        return e.value;
      case Expr::Kind::Var:
        return read_var(e.name, stmt_id);
      case Expr::Kind::Bin: {
        std::optional<Value> l = eval_math(*e.lhs, stmt_id);
        if (!l) return std::nullopt;
        std::optional<Value> r = eval_math(*e.rhs, stmt_id);
        if (!r) return std::nullopt;
        if (e.op == '/') {
          if (*r == 0) {
            runtime_error(stmt_id, "division by zero");
            return std::nullopt;
          }
          return *l / *r;
        }
        return apply(e.op, *l, *r, stmt_id);
      }
    }
    return std::nullopt;
  }

  std::optional<bool> eval_cond(const Cond& c, int stmt_id) {
    switch (c.kind) {
      case Cond::Kind::Atom: {
        std::optional<Value> l = eval_math(*c.lhs, stmt_id);
        if (!l) return std::nullopt;
        std::optional<Value> r = eval_math(*c.rhs, stmt_id);
        if (!r) return std::nullopt;
        return cmp_eval(c.cmp, *l, *r);
      }
      case Cond::Kind::And: {
        std::optional<bool> a = eval_cond(*c.a, stmt_id);
        if (!a) return std::nullopt;
        if (!*a) return false;
        return eval_cond(*c.b, stmt_id);
      }
      case Cond::Kind::Or: {
        std::optional<bool> a = eval_cond(*c.a, stmt_id);
        if (!a) return std::nullopt;
        if (*a) return true;
        return eval_cond(*c.b, stmt_id);
      }
      case Cond::Kind::Not: {
        std::optional<bool> a = eval_cond(*c.a, stmt_id);
        if (!a) return std::nullopt;
        return !*a;
      }
    }
    return std::nullopt;
  }

  const Program& p_;
  Mode mode_;
  RuleMode rules_;
  long long fuel_;
  const RunHooks* hooks_;
  RunOutcome out_;
  int sub_index_ = 0;
};

}  // namespace detail

inline RunOutcome run(const Program& p, const Store& input,
                      long long fuel = kDefaultFuel,
                      Mode mode = Mode::Wrapped,
                      RuleMode rules = RuleMode::Corrected,
                      const RunHooks* hooks = nullptr) {
  detail::TreeWalk walk(p, mode, rules, fuel, hooks);
  return walk.run(input);
}

}  // namespace specfix
