// Deterministic random AST generators shared by the property tests.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "specfix/ast.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline specfix::Value pick_const(Rng& rng, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline int pick(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

// Expression over the given variables. allow_div controls whether '/' can
// appear (runs may then hit division-by-zero, which callers must tolerate).
inline specfix::ExprPtr expr(Rng& rng, const std::vector<std::string>& vars,
                             int depth, bool allow_div = false) {
  using specfix::Expr;
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    if (!vars.empty() && pick(rng, 0, 2) != 0)
      return Expr::var(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)]);
    return Expr::constant(pick_const(rng));
  }
  static const char ops3[] = {'+', '-', '*'};
  static const char ops4[] = {'+', '-', '*', '/'};
  char op = allow_div ? ops4[pick(rng, 0, 3)] : ops3[pick(rng, 0, 2)];
  return Expr::bin(op, expr(rng, vars, depth - 1, allow_div),
                   expr(rng, vars, depth - 1, allow_div));
}

inline specfix::Cmp pick_cmp(Rng& rng) {
  static const specfix::Cmp all[] = {specfix::Cmp::Lt, specfix::Cmp::Le,
                                     specfix::Cmp::Gt, specfix::Cmp::Ge,
                                     specfix::Cmp::Eq, specfix::Cmp::Ne};
  return all[pick(rng, 0, 5)];
}

inline specfix::CondPtr cond(Rng& rng, const std::vector<std::string>& vars,
                             int depth) {
  using specfix::Cond;
  if (depth <= 0 || pick(rng, 0, 2) == 0)
    return Cond::atom(expr(rng, vars, 1), pick_cmp(rng), expr(rng, vars, 1));
  switch (pick(rng, 0, 2)) {
    case 0:
      return Cond::conj(cond(rng, vars, depth - 1), cond(rng, vars, depth - 1));
    case 1:
      return Cond::disj(cond(rng, vars, depth - 1), cond(rng, vars, depth - 1));
    default:
      return Cond::negate(cond(rng, vars, depth - 1));
  }
}

struct ProgramOptions {
  int max_inputs = 3;
  int max_locals = 3;
  int max_stmts = 5;
  int expr_depth = 3;
  bool allow_div = false;
  bool allow_loops = true;
  specfix::Width width = specfix::Width::I8;
};

// Well-formed program: declared-before-use and assigned-before-read hold by
// construction, so pretty_print output always re-parses.
inline specfix::Program program(Rng& rng, const ProgramOptions& opt = {}) {
  using namespace specfix;
  Program p;
  std::vector<std::string> assigned;
  const int n_inputs = pick(rng, 1, opt.max_inputs);
  for (int i = 0; i < n_inputs; ++i) {
    std::string name(1, static_cast<char>('a' + i));
    p.decls.push_back(Decl{name, opt.width, true});
    assigned.push_back(name);
  }
  const int n_locals = pick(rng, 0, opt.max_locals);
  std::vector<std::string> locals;
  for (int i = 0; i < n_locals; ++i) {
    std::string name(1, static_cast<char>('s' + i));
    p.decls.push_back(Decl{name, opt.width, false});
    locals.push_back(name);
  }

  // allow_new=false keeps nested blocks from first-assigning a local, since
  // a branch- or loop-local assignment is not definite afterward.
  auto gen_assign = [&](Rng& r, bool allow_new) {
    if (allow_new) {
      for (auto& l : locals) {
        bool done = false;
        for (auto& a : assigned)
          if (a == l) done = true;
        if (!done) {
          Stmt s = Stmt::assign(
              l, expr(r, assigned, opt.expr_depth, opt.allow_div));
          assigned.push_back(l);
          return s;
        }
      }
    }
    const std::string& target =
        assigned[pick(r, 0, static_cast<int>(assigned.size()) - 1)];
    return Stmt::assign(target,
                        expr(r, assigned, opt.expr_depth, opt.allow_div));
  };

  const int n_stmts = pick(rng, 1, opt.max_stmts);
  for (int i = 0; i < n_stmts; ++i) {
    switch (pick(rng, 0, 5)) {
      case 0:
        if (opt.allow_loops) {
          std::vector<Stmt> body;
          body.push_back(gen_assign(rng, false));
          p.body.push_back(Stmt::while_loop(cond(rng, assigned, 1), body));
          break;
        }
        [[fallthrough]];
      case 1: {
        std::vector<Stmt> then_b{gen_assign(rng, false)};
        std::vector<Stmt> else_b;
        if (pick(rng, 0, 1)) else_b.push_back(gen_assign(rng, false));
        p.body.push_back(
            Stmt::if_stmt(cond(rng, assigned, 1), then_b, else_b));
        break;
      }
      case 2:
        if (i + 1 == n_stmts) {
          p.body.push_back(Stmt::ret());
          break;
        }
        [[fallthrough]];
      default:
        p.body.push_back(gen_assign(rng, true));
        break;
    }
  }
  if (p.body.empty()) p.body.push_back(gen_assign(rng, true));
  renumber(p);
  return p;
}

}  // namespace gen
