#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "specfix/ast.hpp"
#include "specfix/interp.hpp"
#include "specfix/parser.hpp"
#include "specfix/printer.hpp"

using namespace specfix;

namespace {

bool outcome_equal(const RunOutcome& a, const RunOutcome& b) {
  if (a.status != b.status || a.steps != b.steps || a.store != b.store)
    return false;
  if (a.trap.has_value() != b.trap.has_value()) return false;
  if (a.trap && (a.trap->stmt_id != b.trap->stmt_id ||
                 a.trap->sub_index != b.trap->sub_index ||
                 a.trap->kind != b.trap->kind))
    return false;
  return a.error == b.error;
}

}  // namespace

TEST_CASE("parse: countdown loop") {
  Program p = parse("input i8 x; while (x > 0) { x = x - 1; }");
  REQUIRE(p.decls.size() == 1);
  CHECK(p.decls[0].name == "x");
  CHECK(p.decls[0].width == Width::I8);
  CHECK(p.decls[0].is_input);
  REQUIRE(p.body.size() == 1);
  REQUIRE(p.body[0].kind == Stmt::Kind::While);
  const Cond& c = *p.body[0].cond;
  REQUIRE(c.kind == Cond::Kind::Atom);
  CHECK(c.cmp == Cmp::Gt);
  CHECK(c.lhs->kind == Expr::Kind::Var);
  CHECK(c.lhs->name == "x");
  CHECK(c.rhs->kind == Expr::Kind::Const);
  CHECK(c.rhs->value == 0);
  REQUIRE(p.body[0].body.size() == 1);
  CHECK(p.body[0].body[0].kind == Stmt::Kind::Assign);
}

TEST_CASE("parse: empty program is an error") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("// just a comment\n"), ParseError);
}

TEST_CASE("parse: undeclared variable") {
  CHECK_THROWS_WITH(parse("input i8 x; y = x + 1;"),
                    Catch::Matchers::ContainsSubstring("undeclared variable 'y'"));
}

TEST_CASE("parse: duplicate declaration") {
  CHECK_THROWS_WITH(parse("input i8 x; i8 x; x = 1;"),
                    Catch::Matchers::ContainsSubstring("duplicate declaration"));
}

TEST_CASE("parse: syntax error carries position") {
  try {
    parse("input i8 x;\nx = ;\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("expected expression") !=
          std::string::npos);
  }
}

TEST_CASE("parse: read before assignment is rejected") {
  CHECK_THROWS_AS(parse("input i8 x; i8 y; x = y + 1;"), ParseError);
  // Assignment in only one branch of an if is not definite.
  CHECK_THROWS_AS(
      parse("input i8 x; i8 y; if (x > 0) { y = 1; } x = y;"), ParseError);
  CHECK_NOTHROW(
      parse("input i8 x; i8 y; if (x > 0) { y = 1; } else { y = 2; } x = y;"));
}

TEST_CASE("parse: comma declaration lists and comments") {
  Program p = parse(
      "// two inputs\n"
      "input i8 a, b;\n"
      "i8 c;\n"
      "c = a + b; // sum\n");
  CHECK(p.decls.size() == 3);
  CHECK(p.decls[1].is_input);
  CHECK_FALSE(p.decls[2].is_input);
}

TEST_CASE("pretty_print: round-trips the countdown program") {
  Program p = parse("input i8 x; while (x > 0) { x = x - 1; }");
  std::string text = pretty_print(p);
  Program q = parse(text);
  CHECK(program_equal(p, q));
  CHECK(pretty_print(q) == text);
}

TEST_CASE("pretty_print: grouping is preserved structurally") {
  Program p = parse("input i8 a, b, c; i8 d; d = a + (b * c);");
  // Precedence makes the parentheses redundant; the tree survives without
  // them.
  CHECK(pretty_print(p).find("d = a + b * c;") != std::string::npos);
  CHECK(program_equal(p, parse(pretty_print(p))));

  Program q = parse("input i8 a, b, c; i8 d; d = a + (b + c);");
  CHECK(pretty_print(q).find("d = a + (b + c);") != std::string::npos);
  CHECK(program_equal(q, parse(pretty_print(q))));
}

TEST_CASE("pretty_print: canonical brace style for if/else") {
  Program p = parse(
      "input i8 x; i8 y; if (x > 0 && x < 10) { y = 1; } else { y = 2; }");
  std::string text = pretty_print(p);
  CHECK(text ==
        "input i8 x;\n"
        "i8 y;\n"
        "if (x > 0 && x < 10) {\n"
        "  y = 1;\n"
        "} else {\n"
        "  y = 2;\n"
        "}\n");
}

TEST_CASE("round-trip property over generated programs") {
  gen::Rng rng(0xC0FFEE);
  for (int i = 0; i < 1000; ++i) {
    Program p = gen::program(rng);
    std::string text = pretty_print(p);
    Program q;
    try {
      q = parse(text);
    } catch (const ParseError& e) {
      CAPTURE(text);
      FAIL(std::string("generated program failed to re-parse: ") + e.what());
    }
    if (!program_equal(p, q)) {
      CAPTURE(text);
      CAPTURE(pretty_print(q));
      FAIL("round-trip mismatch");
    }
  }
}

TEST_CASE("run: countdown halts with x = 0") {
  Program p = parse("input i8 x; while (x > 0) { x = x - 1; }");
  int heads = 0;
  RunHooks hooks;
  hooks.on_loop_head = [&](int, const Store&) {
    ++heads;
    return false;
  };
  RunOutcome r = run(p, {{"x", 3}}, 100, Mode::Wrapped, RuleMode::Corrected,
                     &hooks);
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.store.at("x") == 0);
  CHECK(heads == 4);  // three iterations plus the failing check
}

TEST_CASE("run: monotone decrease under mathematical semantics exhausts fuel") {
  Program p = parse("input i8 x; while (x < 10) { x = x - 1; }");
  RunOutcome r = run(p, {{"x", 0}}, 1000, Mode::Mathematical);
  CHECK(r.status == RunStatus::FuelExhausted);
}

TEST_CASE("run: checked mode traps 127 + 1 at i8") {
  Program p = parse("input i8 x; i8 y; y = x + 1;");
  RunOutcome r = run(p, {{"x", 127}}, 100, Mode::Checked);
  REQUIRE(r.status == RunStatus::OverflowTrap);
  REQUIRE(r.trap.has_value());
  CHECK(r.trap->stmt_id == p.body[0].id);
  CHECK(r.trap->sub_index == 0);
  CHECK(r.trap->kind == OverflowKind::IO);
}

TEST_CASE("run: division by zero reports the site") {
  Program p = parse("input i8 x; i8 y; y = 1; y = x / (x - x);");
  RunOutcome r = run(p, {{"x", 3}}, 100, Mode::Wrapped);
  CHECK(r.status == RunStatus::RuntimeError);
  CHECK(r.error == "division by zero");
  CHECK(r.error_stmt == p.body[1].id);
}

TEST_CASE("run: missing input variable") {
  Program p = parse("input i8 x, y; i8 z; z = x + y;");
  RunOutcome r = run(p, {{"x", 1}}, 100, Mode::Wrapped);
  CHECK(r.status == RunStatus::RuntimeError);
  CHECK(r.error.find("missing input variable 'y'") != std::string::npos);
}

TEST_CASE("halting statements") {
  SECTION("no return: the final statement") {
    Program p = parse("input i8 x; i8 y; y = x + 1;");
    CHECK(halting_statements(p) == std::set<int>{p.body.back().id});
  }
  SECTION("ends in return: both clauses coincide") {
    Program p = parse("input i8 x; x = x + 1; return;");
    CHECK(halting_statements(p) == std::set<int>{p.body.back().id});
    CHECK(halting_statements(p).size() == 1);
  }
  SECTION("return inside a loop plus trailing code") {
    Program p = parse(
        "input i8 x;"
        "while (x > 0) { if (x == 2) { return; } x = x - 1; }"
        "x = 0;");
    const Stmt* ret = nullptr;
    for_each_stmt(p, [&](const Stmt& s) {
      if (s.kind == Stmt::Kind::Return) ret = &s;
    });
    REQUIRE(ret != nullptr);
    CHECK(halting_statements(p) == std::set<int>{ret->id, p.body.back().id});
  }
}

TEST_CASE("interpreter determinism") {
  gen::Rng rng(0xDE7E12);
  gen::ProgramOptions opt;
  opt.allow_div = true;
  for (int i = 0; i < 200; ++i) {
    Program p = gen::program(rng, opt);
    Store input;
    for (const auto& d : p.decls)
      if (d.is_input) input[d.name] = gen::pick(rng, -8, 8);
    for (Mode m : {Mode::Wrapped, Mode::Checked, Mode::Mathematical}) {
      RunOutcome a = run(p, input, 500, m);
      RunOutcome b = run(p, input, 500, m);
      CHECK(outcome_equal(a, b));
    }
  }
}

TEST_CASE("mode agreement when no rule fires") {
  gen::Rng rng(0xA9BEE);
  gen::ProgramOptions opt;
  opt.allow_div = true;
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    Program p = gen::program(rng, opt);
    Store input;
    for (const auto& d : p.decls)
      if (d.is_input) input[d.name] = gen::pick(rng, -8, 8);
    RunOutcome checked = run(p, input, 400, Mode::Checked);
    if (checked.status == RunStatus::OverflowTrap) continue;
    RunOutcome wrapped = run(p, input, 400, Mode::Wrapped);
    RunOutcome math = run(p, input, 400, Mode::Mathematical);
    CHECK(outcome_equal(wrapped, math));
    CHECK(outcome_equal(checked, math));
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("fuel monotonicity") {
  gen::Rng rng(0xF0E1);
  gen::ProgramOptions opt;
  opt.allow_div = true;
  for (int i = 0; i < 300; ++i) {
    Program p = gen::program(rng, opt);
    Store input;
    for (const auto& d : p.decls)
      if (d.is_input) input[d.name] = gen::pick(rng, -8, 8);
    RunOutcome a = run(p, input, 300, Mode::Wrapped);
    if (a.status == RunStatus::FuelExhausted) continue;
    RunOutcome b = run(p, input, 300 + gen::pick(rng, 1, 1000), Mode::Wrapped);
    CHECK(outcome_equal(a, b));
  }
}
