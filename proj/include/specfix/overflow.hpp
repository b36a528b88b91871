#pragma once

#include <map>
#include <string>
#include <vector>

#include "specfix/ast.hpp"
#include "specfix/printer.hpp"

namespace specfix {

enum class OverflowKind { None, IO, IU };

inline const char* overflow_kind_name(OverflowKind k) {
  switch (k) {
    case OverflowKind::IO: return "IO";
    case OverflowKind::IU: return "IU";
    default: return "none";
  }
}

// PaperFaithful implements the published detection rules verbatim, including
// their gaps (the subtraction IU condition and the multiplication rules do
// not characterize the negative-operand cases). Corrected implements the
// mathematical characterization the rules are claimed to be sound for.
enum class RuleMode { PaperFaithful, Corrected };

// Overflow classification of a single binary operation on in-range operands.
// op is one of + - * (division is excluded from the rule set; the single
// intmin / -1 case is handled ad hoc by the checked interpreter).
inline OverflowKind check_op(char op, Value x, Value y, Width w,
                             RuleMode mode) {
  const Value mx = intmax(w);
  const Value mn = intmin(w);
  if (mode == RuleMode::Corrected) {
    Value r = 0;
    switch (op) {
      case '+': r = x + y; break;
      case '-': r = x - y; break;
      case '*': r = x * y; break;
      default: return OverflowKind::None;
    }
    if (r > mx) return OverflowKind::IO;
    if (r < mn) return OverflowKind::IU;
    return OverflowKind::None;
  }
  switch (op) {
    case '+':
      if (x > 0 && y > mx - x) return OverflowKind::IO;
      if (x < 0 && y < mn - x) return OverflowKind::IU;
      return OverflowKind::None;
    case '-':
      if (x > 0 && y < x - mx) return OverflowKind::IO;
      if (x < 0 && y < mn - x) return OverflowKind::IU;
      return OverflowKind::None;
    case '*':
      if (x > 0 && y > mx / x) return OverflowKind::IO;
      if (x < 0 && y < mn / x) return OverflowKind::IU;
      return OverflowKind::None;
    default:
      return OverflowKind::None;
  }
}

// ---------------------------------------------------------------------------
// split(e): the binary sub-expressions of e in evaluation order (post-order,
// left subtree first), each displayed over the original operands plus fresh
// $k names for already-listed sub-results. The final entry is e itself.
// ---------------------------------------------------------------------------

struct SplitEntry {
  const Expr* node = nullptr;  // binary node within the original expression
  ExprPtr display;             // operands with $k placeholders
  char op = 0;
  int index = 0;
};

namespace detail {
inline void split_rec(const ExprPtr& e, std::vector<SplitEntry>& out,
                      std::map<const Expr*, ExprPtr>& named) {
  if (!e || e->kind != Expr::Kind::Bin) return;
  split_rec(e->lhs, out, named);
  split_rec(e->rhs, out, named);
  auto display_of = [&](const ExprPtr& child) {
    auto it = named.find(child.get());
    return it == named.end() ? child : it->second;
  };
  SplitEntry entry;
  entry.node = e.get();
  entry.display = Expr::bin(e->op, display_of(e->lhs), display_of(e->rhs));
  entry.op = e->op;
  entry.index = static_cast<int>(out.size());
  out.push_back(entry);
  named[e.get()] = Expr::var("$" + std::to_string(out.size()));
}
}  // namespace detail

inline std::vector<SplitEntry> split(const ExprPtr& e) {
  std::vector<SplitEntry> out;
  std::map<const Expr*, ExprPtr> named;
  detail::split_rec(e, out, named);
  return out;
}

}  // namespace specfix
