#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfix/ast.hpp"

namespace specfix {

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int l = 0, int c = 0)
      : std::runtime_error(l > 0 ? ("line " + std::to_string(l) + ":" +
                                    std::to_string(c) + ": " + msg)
                                 : msg),
        line(l),
        col(c) {}
};

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Value value = 0;
  int line = 1;
  int col = 1;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (i + k < src.size() && src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      const std::string digits = src.substr(i, j - i);
      Value v = 0;
      for (char d : digits) {
        v = v * 10 + (d - '0');
        if (v > intmax(Width::I64))
          throw ParseError("integer literal out of range", line, col);
      }
      t.kind = Token::Kind::Int;
      t.text = digits;
      t.value = v;
      advance(j - i);
      out.push_back(t);
      continue;
    }
    static const char* two_char[] = {"&&", "||", "==", "!=", "<=", ">="};
    bool matched = false;
    for (const char* p : two_char) {
      if (src.compare(i, 2, p) == 0) {
        t.kind = Token::Kind::Punct;
        t.text = p;
        advance(2);
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string singles = "<>!=(){};,+-*/";
    if (singles.find(c) != std::string::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
      out.push_back(t);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line,
                     col);
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  Program parse_program() {
    Program p;
    while (at_decl_start()) parse_decl(p);
    while (!at_end()) p.body.push_back(parse_stmt(p));
    if (p.body.empty()) throw ParseError("empty program");
    renumber(p);
    check_definite_assignment(p);
    return p;
  }

  // Bare expression over free identifiers (used by the equivalence checker).
  ExprPtr parse_bare_expr() {
    decls_ = nullptr;
    ExprPtr e = parse_expr();
    expect_end();
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == Token::Kind::End; }
  bool at_punct(const std::string& s) const {
    return cur().kind == Token::Kind::Punct && cur().text == s;
  }
  bool at_ident(const std::string& s) const {
    return cur().kind == Token::Kind::Ident && cur().text == s;
  }
  void bump() { ++pos_; }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = cur();
    std::string got = t.kind == Token::Kind::End ? "end of input"
                                                 : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", got " + got, t.line, t.col);
  }
  void expect_punct(const std::string& s) {
    if (!at_punct(s)) fail("'" + s + "'");
    bump();
  }
  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  bool at_decl_start() const {
    if (cur().kind != Token::Kind::Ident) return false;
    if (cur().text == "input") return true;
    return width_from_name(cur().text).has_value();
  }

  void parse_decl(Program& p) {
    bool is_input = false;
    if (at_ident("input")) {
      is_input = true;
      bump();
    }
    if (cur().kind != Token::Kind::Ident) fail("type name");
    auto w = width_from_name(cur().text);
    if (!w) fail("type name (i8/i16/i32/i64)");
    bump();
    while (true) {
      if (cur().kind != Token::Kind::Ident) fail("identifier");
      const Token& t = cur();
      if (is_keyword(t.text))
        throw ParseError("'" + t.text + "' is a keyword", t.line, t.col);
      if (p.find_decl(t.text))
        throw ParseError("duplicate declaration of '" + t.text + "'", t.line,
                         t.col);
      p.decls.push_back(Decl{t.text, *w, is_input});
      bump();
      if (at_punct(",")) {
        bump();
        continue;
      }
      break;
    }
    expect_punct(";");
  }

  static bool is_keyword(const std::string& s) {
    return s == "input" || s == "while" || s == "if" || s == "else" ||
           s == "return" || width_from_name(s).has_value();
  }

  Stmt parse_stmt(const Program& p) {
    decls_ = &p;
    if (at_ident("while")) {
      bump();
      expect_punct("(");
      CondPtr c = parse_cond();
      expect_punct(")");
      return Stmt::while_loop(c, parse_block(p));
    }
    if (at_ident("if")) {
      bump();
      expect_punct("(");
      CondPtr c = parse_cond();
      expect_punct(")");
      std::vector<Stmt> then_b = parse_block(p);
      std::vector<Stmt> else_b;
      if (at_ident("else")) {
        bump();
        else_b = parse_block(p);
      }
      return Stmt::if_stmt(c, std::move(then_b), std::move(else_b));
    }
    if (at_ident("return")) {
      bump();
      expect_punct(";");
      return Stmt::ret();
    }
    if (at_decl_start()) {
      const Token& t = cur();
      throw ParseError("declarations must precede statements", t.line, t.col);
    }
    if (cur().kind != Token::Kind::Ident) fail("statement");
    const Token& t = cur();
    std::string name = t.text;
    if (decls_ && !decls_->find_decl(name))
      throw ParseError("undeclared variable '" + name + "'", t.line, t.col);
    bump();
    expect_punct("=");
    ExprPtr e = parse_expr();
    expect_punct(";");
    return Stmt::assign(std::move(name), e);
  }

  std::vector<Stmt> parse_block(const Program& p) {
    expect_punct("{");
    std::vector<Stmt> out;
    while (!at_punct("}")) {
      if (at_end()) fail("'}'");
      out.push_back(parse_stmt(p));
    }
    bump();
    return out;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (at_punct("+") || at_punct("-")) {
      char op = cur().text[0];
      bump();
      e = Expr::bin(op, e, parse_term());
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (at_punct("*") || at_punct("/")) {
      char op = cur().text[0];
      bump();
      e = Expr::bin(op, e, parse_factor());
    }
    return e;
  }

  ExprPtr parse_factor() {
    if (at_punct("-")) {
      const Token& minus = cur();
      bump();
      if (cur().kind != Token::Kind::Int)
        throw ParseError("'-' is only allowed on integer literals",
                         minus.line, minus.col);
      Value v = -cur().value;
      bump();
      return Expr::constant(v);
    }
    if (cur().kind == Token::Kind::Int) {
      Value v = cur().value;
      bump();
      return Expr::constant(v);
    }
    if (cur().kind == Token::Kind::Ident) {
      const Token& t = cur();
      if (is_keyword(t.text)) fail("expression");
      if (decls_ && !decls_->find_decl(t.text))
        throw ParseError("undeclared variable '" + t.text + "'", t.line,
                         t.col);
      std::string name = t.text;
      bump();
      return Expr::var(std::move(name));
    }
    if (at_punct("(")) {
      bump();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    fail("expression");
  }

  CondPtr parse_cond() {
    CondPtr c = parse_cond_and();
    while (at_punct("||")) {
      bump();
      c = Cond::disj(c, parse_cond_and());
    }
    return c;
  }

  CondPtr parse_cond_and() {
    CondPtr c = parse_cond_unary();
    while (at_punct("&&")) {
      bump();
      c = Cond::conj(c, parse_cond_unary());
    }
    return c;
  }

  CondPtr parse_cond_unary() {
    if (at_punct("!")) {
      bump();
      expect_punct("(");
      CondPtr c = parse_cond();
      expect_punct(")");
      return Cond::negate(c);
    }
    // "(": either a parenthesized condition or the left expression of a
    // comparison. Try the atom reading first and backtrack.
    if (at_punct("(")) {
      size_t save = pos_;
      try {
        return parse_atom();
      } catch (const ParseError&) {
        pos_ = save;
      }
      bump();
      CondPtr c = parse_cond();
      expect_punct(")");
      return c;
    }
    return parse_atom();
  }

  CondPtr parse_atom() {
    ExprPtr l = parse_expr();
    Cmp c;
    if (at_punct("<"))
      c = Cmp::Lt;
    else if (at_punct("<="))
      c = Cmp::Le;
    else if (at_punct(">"))
      c = Cmp::Gt;
    else if (at_punct(">="))
      c = Cmp::Ge;
    else if (at_punct("=="))
      c = Cmp::Eq;
    else if (at_punct("!="))
      c = Cmp::Ne;
    else
      fail("comparison operator");
    bump();
    ExprPtr r = parse_expr();
    return Cond::atom(l, c, r);
  }

  // Reading a variable no path has assigned yet is rejected up front; the
  // interpreter never sees an uninitialized store slot.
  void check_definite_assignment(const Program& p) {
    std::set<std::string> assigned;
    for (const auto& d : p.decls)
      if (d.is_input) assigned.insert(d.name);
    check_list(p.body, assigned);
  }

  void require_assigned(const std::set<std::string>& vars,
                        const std::set<std::string>& assigned,
                        const char* what) {
    for (const auto& v : vars) {
      if (!assigned.count(v))
        throw ParseError("variable '" + v + "' may be read in " +
                         std::string(what) + " before it is assigned");
    }
  }

  void check_list(const std::vector<Stmt>& list,
                  std::set<std::string>& assigned) {
    for (const auto& s : list) {
      switch (s.kind) {
        case Stmt::Kind::Assign:
          require_assigned(expr_vars(s.rhs), assigned, "an assignment");
          assigned.insert(s.target);
          break;
        case Stmt::Kind::While: {
          std::set<std::string> cvars;
          collect_cond_vars(s.cond, cvars);
          require_assigned(cvars, assigned, "a loop condition");
          std::set<std::string> inner = assigned;
          check_list(s.body, inner);
          // The body may run zero times; nothing it assigns is definite here.
          break;
        }
        case Stmt::Kind::If: {
          std::set<std::string> cvars;
          collect_cond_vars(s.cond, cvars);
          require_assigned(cvars, assigned, "an if condition");
          std::set<std::string> then_set = assigned;
          check_list(s.body, then_set);
          if (!s.else_body.empty()) {
            std::set<std::string> else_set = assigned;
            check_list(s.else_body, else_set);
            for (const auto& v : then_set)
              if (else_set.count(v)) assigned.insert(v);
          }
          break;
        }
        case Stmt::Kind::Return:
          break;
      }
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const Program* decls_ = nullptr;
};

}  // namespace detail

inline Program parse(const std::string& source) {
  detail::Parser p(source);
  return p.parse_program();
}

inline ExprPtr parse_expr_text(const std::string& source) {
  detail::Parser p(source);
  return p.parse_bare_expr();
}

}  // namespace specfix
