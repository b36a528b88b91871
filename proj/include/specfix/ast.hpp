#pragma once

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfix/width.hpp"

namespace specfix {

// ---------------------------------------------------------------------------
// Arithmetic expressions. Immutable; sub-trees are shared freely, which keeps
// mutant generation cheap. Parentheses are syntax only: the printer emits the
// minimal parentheses that reproduce the tree shape.
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Bin };

  Kind kind = Kind::Const;
  Value value = 0;       // Const
  std::string name;      // Var
  char op = 0;           // Bin: one of + - * /
  ExprPtr lhs, rhs;      // Bin

  static ExprPtr constant(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Const;
    e->value = v;
    return e;
  }
  static ExprPtr var(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr bin(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bin;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Const: return a->value == b->value;
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Bin:
      return a->op == b->op && expr_equal(a->lhs, b->lhs) &&
             expr_equal(a->rhs, b->rhs);
  }
  return false;
}

inline void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var) out.insert(e->name);
  if (e->kind == Expr::Kind::Bin) {
    collect_vars(e->lhs, out);
    collect_vars(e->rhs, out);
  }
}

inline std::set<std::string> expr_vars(const ExprPtr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

inline bool expr_contains_op(const ExprPtr& e, char op) {
  if (!e || e->kind != Expr::Kind::Bin) return false;
  return e->op == op || expr_contains_op(e->lhs, op) ||
         expr_contains_op(e->rhs, op);
}

// ---------------------------------------------------------------------------
// Boolean conditions: comparisons combined with && || !.
// ---------------------------------------------------------------------------

enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };

inline const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
    case Cmp::Eq: return "==";
    case Cmp::Ne: return "!=";
  }
  return "?";
}

// Mirror image under operand swap: (a < b) == (b > a).
inline Cmp cmp_flip(Cmp c) {
  switch (c) {
    case Cmp::Lt: return Cmp::Gt;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Gt: return Cmp::Lt;
    case Cmp::Ge: return Cmp::Le;
    default: return c;
  }
}

inline bool cmp_eval(Cmp c, Value a, Value b) {
  switch (c) {
    case Cmp::Lt: return a < b;
    case Cmp::Le: return a <= b;
    case Cmp::Gt: return a > b;
    case Cmp::Ge: return a >= b;
    case Cmp::Eq: return a == b;
    case Cmp::Ne: return a != b;
  }
  return false;
}

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

struct Cond {
  enum class Kind { Atom, And, Or, Not };

  Kind kind = Kind::Atom;
  Cmp cmp = Cmp::Lt;     // Atom
  ExprPtr lhs, rhs;      // Atom
  CondPtr a, b;          // And/Or children; Not uses a

  static CondPtr atom(ExprPtr l, Cmp c, ExprPtr r) {
    auto n = std::make_shared<Cond>();
    n->kind = Kind::Atom;
    n->cmp = c;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }
  static CondPtr conj(CondPtr x, CondPtr y) {
    auto n = std::make_shared<Cond>();
    n->kind = Kind::And;
    n->a = std::move(x);
    n->b = std::move(y);
    return n;
  }
  static CondPtr disj(CondPtr x, CondPtr y) {
    auto n = std::make_shared<Cond>();
    n->kind = Kind::Or;
    n->a = std::move(x);
    n->b = std::move(y);
    return n;
  }
  static CondPtr negate(CondPtr x) {
    auto n = std::make_shared<Cond>();
    n->kind = Kind::Not;
    n->a = std::move(x);
    return n;
  }
};

inline bool cond_equal(const CondPtr& a, const CondPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Cond::Kind::Atom:
      return a->cmp == b->cmp && expr_equal(a->lhs, b->lhs) &&
             expr_equal(a->rhs, b->rhs);
    case Cond::Kind::Not:
      return cond_equal(a->a, b->a);
    default:
      return cond_equal(a->a, b->a) && cond_equal(a->b, b->b);
  }
}

inline void collect_cond_vars(const CondPtr& c, std::set<std::string>& out) {
  if (!c) return;
  if (c->kind == Cond::Kind::Atom) {
    collect_vars(c->lhs, out);
    collect_vars(c->rhs, out);
  } else {
    collect_cond_vars(c->a, out);
    collect_cond_vars(c->b, out);
  }
}

inline void collect_atoms(const CondPtr& c,
                          std::vector<const Cond*>& out) {
  if (!c) return;
  if (c->kind == Cond::Kind::Atom) {
    out.push_back(c.get());
  } else {
    collect_atoms(c->a, out);
    collect_atoms(c->b, out);
  }
}

// ---------------------------------------------------------------------------
// Statements and programs. Statements carry a stable pre-order id assigned at
// parse time (or by renumber()); slicing and mutation preserve the ids of the
// statements they keep, so findings and patches can refer back to the source.
// ---------------------------------------------------------------------------

struct Stmt {
  enum class Kind { Assign, While, If, Return };

  Kind kind = Kind::Return;
  int id = -1;

  std::string target;           // Assign
  ExprPtr rhs;                  // Assign
  CondPtr cond;                 // While / If
  std::vector<Stmt> body;       // While body / If then-branch
  std::vector<Stmt> else_body;  // If else-branch

  static Stmt assign(std::string var, ExprPtr e) {
    Stmt s;
    s.kind = Kind::Assign;
    s.target = std::move(var);
    s.rhs = std::move(e);
    return s;
  }
  static Stmt while_loop(CondPtr c, std::vector<Stmt> b) {
    Stmt s;
    s.kind = Kind::While;
    s.cond = std::move(c);
    s.body = std::move(b);
    return s;
  }
  static Stmt if_stmt(CondPtr c, std::vector<Stmt> then_b,
                      std::vector<Stmt> else_b = {}) {
    Stmt s;
    s.kind = Kind::If;
    s.cond = std::move(c);
    s.body = std::move(then_b);
    s.else_body = std::move(else_b);
    return s;
  }
  static Stmt ret() { return Stmt{}; }
};

struct Decl {
  std::string name;
  Width width = Width::I8;
  bool is_input = false;
};

struct Program {
  std::vector<Decl> decls;
  std::vector<Stmt> body;

  const Decl* find_decl(const std::string& name) const {
    for (const auto& d : decls)
      if (d.name == name) return &d;
    return nullptr;
  }
  Width width_of(const std::string& name) const {
    const Decl* d = find_decl(name);
    if (!d) throw std::logic_error("undeclared variable: " + name);
    return d->width;
  }
  std::vector<std::string> input_names() const {
    std::vector<std::string> out;
    for (const auto& d : decls)
      if (d.is_input) out.push_back(d.name);
    return out;
  }
};

namespace detail {
inline void renumber_stmts(std::vector<Stmt>& list, int& next) {
  for (auto& s : list) {
    s.id = next++;
    renumber_stmts(s.body, next);
    renumber_stmts(s.else_body, next);
  }
}
}  // namespace detail

inline void renumber(Program& p) {
  int next = 0;
  detail::renumber_stmts(p.body, next);
}

inline void for_each_stmt(const std::vector<Stmt>& list,
                          const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : list) {
    fn(s);
    for_each_stmt(s.body, fn);
    for_each_stmt(s.else_body, fn);
  }
}

inline void for_each_stmt(const Program& p,
                          const std::function<void(const Stmt&)>& fn) {
  for_each_stmt(p.body, fn);
}

inline const Stmt* find_stmt(const std::vector<Stmt>& list, int id) {
  for (const auto& s : list) {
    if (s.id == id) return &s;
    if (const Stmt* r = find_stmt(s.body, id)) return r;
    if (const Stmt* r = find_stmt(s.else_body, id)) return r;
  }
  return nullptr;
}

inline const Stmt* find_stmt(const Program& p, int id) {
  return find_stmt(p.body, id);
}

// Pre-order ids of all while statements.
inline std::vector<int> collect_loops(const Program& p) {
  std::vector<int> ids;
  for_each_stmt(p, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::While) ids.push_back(s.id);
  });
  return ids;
}

namespace detail {
inline bool transform_stmts(std::vector<Stmt>& list, int id,
                            const std::function<void(Stmt&)>& edit) {
  for (auto& s : list) {
    if (s.id == id) {
      edit(s);
      return true;
    }
    if (transform_stmts(s.body, id, edit)) return true;
    if (transform_stmts(s.else_body, id, edit)) return true;
  }
  return false;
}
}  // namespace detail

// Copy of p with the statement of the given id edited in place. The edited
// statement keeps its id.
inline Program with_stmt_edit(const Program& p, int id,
                              const std::function<void(Stmt&)>& edit) {
  Program q = p;
  if (!detail::transform_stmts(q.body, id, edit))
    throw std::logic_error("no statement with id " + std::to_string(id));
  return q;
}

inline bool stmt_equal(const Stmt& a, const Stmt& b);

inline bool stmt_list_equal(const std::vector<Stmt>& a,
                            const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!stmt_equal(a[i], b[i])) return false;
  return true;
}

inline bool stmt_equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::Assign:
      return a.target == b.target && expr_equal(a.rhs, b.rhs);
    case Stmt::Kind::While:
      return cond_equal(a.cond, b.cond) && stmt_list_equal(a.body, b.body);
    case Stmt::Kind::If:
      return cond_equal(a.cond, b.cond) && stmt_list_equal(a.body, b.body) &&
             stmt_list_equal(a.else_body, b.else_body);
    case Stmt::Kind::Return:
      return true;
  }
  return false;
}

// Structural equality; ids do not participate.
inline bool program_equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].name != b.decls[i].name ||
        a.decls[i].width != b.decls[i].width ||
        a.decls[i].is_input != b.decls[i].is_input)
      return false;
  }
  return stmt_list_equal(a.body, b.body);
}

// Halting statements: every return statement plus the final statement of the
// program body. muImp has no functions, so the "not called by another
// function" clause holds vacuously.
inline std::set<int> halting_statements(const Program& p) {
  std::set<int> out;
  for_each_stmt(p, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::Return) out.insert(s.id);
  });
  if (!p.body.empty()) out.insert(p.body.back().id);
  return out;
}

}  // namespace specfix
