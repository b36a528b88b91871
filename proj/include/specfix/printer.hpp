#pragma once

#include <sstream>
#include <string>

#include "specfix/ast.hpp"

namespace specfix {

namespace detail {

inline int expr_prec(const Expr& e) {
  if (e.kind != Expr::Kind::Bin) return 3;
  return (e.op == '*' || e.op == '/') ? 2 : 1;
}

inline void print_expr_rec(const Expr& e, std::ostream& os, int parent_prec,
                           bool right_operand) {
  if (e.kind == Expr::Kind::Const) {
    os << value_str(e.value);
    return;
  }
  if (e.kind == Expr::Kind::Var) {
    os << e.name;
    return;
  }
  const int prec = expr_prec(e);
  // Right operands at equal precedence keep their parentheses so the printed
  // text re-parses to the same tree (left-associative grammar).
  const bool needs_parens =
      prec < parent_prec || (right_operand && prec == parent_prec);
  if (needs_parens) os << "(";
  print_expr_rec(*e.lhs, os, prec, false);
  os << " " << e.op << " ";
  print_expr_rec(*e.rhs, os, prec, true);
  if (needs_parens) os << ")";
}

inline int cond_prec(const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::Or: return 1;
    case Cond::Kind::And: return 2;
    default: return 3;
  }
}

inline void print_cond_rec(const Cond& c, std::ostream& os, int parent_prec) {
  if (c.kind == Cond::Kind::Atom) {
    print_expr_rec(*c.lhs, os, 0, false);
    os << " " << cmp_text(c.cmp) << " ";
    print_expr_rec(*c.rhs, os, 0, false);
    return;
  }
  if (c.kind == Cond::Kind::Not) {
    os << "!(";
    print_cond_rec(*c.a, os, 0);
    os << ")";
    return;
  }
  const int prec = cond_prec(c);
  const bool needs_parens = prec < parent_prec;
  if (needs_parens) os << "(";
  print_cond_rec(*c.a, os, prec);
  os << (c.kind == Cond::Kind::And ? " && " : " || ");
  // && and || re-parse left-associatively; parenthesize equal-precedence
  // right children for the same reason as in expressions.
  print_cond_rec(*c.b, os, prec + 1);
  if (needs_parens) os << ")";
}

inline void print_stmts(const std::vector<Stmt>& list, std::ostream& os,
                        int indent);

inline void print_block(const std::vector<Stmt>& list, std::ostream& os,
                        int indent) {
  os << "{\n";
  print_stmts(list, os, indent + 1);
  for (int i = 0; i < indent; ++i) os << "  ";
  os << "}";
}

inline void print_stmts(const std::vector<Stmt>& list, std::ostream& os,
                        int indent) {
  for (const auto& s : list) {
    for (int i = 0; i < indent; ++i) os << "  ";
    switch (s.kind) {
      case Stmt::Kind::Assign:
        os << s.target << " = ";
        print_expr_rec(*s.rhs, os, 0, false);
        os << ";";
        break;
      case Stmt::Kind::While:
        os << "while (";
        print_cond_rec(*s.cond, os, 0);
        os << ") ";
        print_block(s.body, os, indent);
        break;
      case Stmt::Kind::If:
        os << "if (";
        print_cond_rec(*s.cond, os, 0);
        os << ") ";
        print_block(s.body, os, indent);
        if (!s.else_body.empty()) {
          os << " else ";
          print_block(s.else_body, os, indent);
        }
        break;
      case Stmt::Kind::Return:
        os << "return;";
        break;
    }
    os << "\n";
  }
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr_rec(*e, os, 0, false);
  return os.str();
}

inline std::string print_cond(const CondPtr& c) {
  std::ostringstream os;
  detail::print_cond_rec(*c, os, 0);
  return os.str();
}

inline std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.decls) {
    if (d.is_input) os << "input ";
    os << width_name(d.width) << " " << d.name << ";\n";
  }
  detail::print_stmts(p.body, os, 0);
  return os.str();
}

}  // namespace specfix
