#include <secview/eval.hpp>

#include "match.hpp"

#include <secview/error.hpp>

#include <algorithm>
#include <map>

namespace secview {

using detail::for_each_match;
using detail::Match;
using detail::term_value;
using detail::VarIndex;

std::string AnswerSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& r : rows) {
    if (!first) out += ", ";
    first = false;
    out += secview::to_string(r);
  }
  return out + "}";
}

AnswerSet intersect(const AnswerSet& a, const AnswerSet& b) {
  AnswerSet out;
  std::set_intersection(a.rows.begin(), a.rows.end(), b.rows.begin(), b.rows.end(),
                        std::inserter(out.rows, out.rows.end()));
  return out;
}

std::set<std::string> relevant_vars(const std::vector<Atom>& body, const std::vector<Builtin>& builtins) {
  std::map<std::string, int> count;
  for (const auto& a : body)
    for (const auto& t : a.args)
      if (t.is_var()) ++count[t.var_name()];
  for (const auto& b : builtins) {
    if (is_unary(b.op) || b.compares_with_null()) continue;
    if (b.lhs.is_var()) ++count[b.lhs.var_name()];
    if (b.rhs.is_var()) ++count[b.rhs.var_name()];
  }
  std::set<std::string> out;
  for (const auto& [v, n] : count)
    if (n >= 2) out.insert(v);
  return out;
}

namespace {

int compare_ints(const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int())
    throw SemanticError("order comparison between non-integer values " + a.to_string() + " and " + b.to_string());
  return a.as_int() < b.as_int() ? -1 : (a.as_int() > b.as_int() ? 1 : 0);
}

bool order_holds(BuiltinOp op, int c) {
  switch (op) {
    case BuiltinOp::Lt: return c < 0;
    case BuiltinOp::Gt: return c > 0;
    case BuiltinOp::Le: return c <= 0;
    case BuiltinOp::Ge: return c >= 0;
    default: return false;
  }
}

} // namespace

bool holds_classical(BuiltinOp op, const Value& a, const Value& b) {
  switch (op) {
    case BuiltinOp::IsNull: return a.is_null();
    case BuiltinOp::IsNotNull: return !a.is_null();
    case BuiltinOp::Eq: return a == b;
    case BuiltinOp::Neq: return a != b;
    default:
      if (a.is_null() || b.is_null()) return false;
      return order_holds(op, compare_ints(a, b));
  }
}

bool holds_null_semantics(BuiltinOp op, const Value& a, const Value& b) {
  switch (op) {
    case BuiltinOp::IsNull: return a.is_null();
    case BuiltinOp::IsNotNull: return !a.is_null();
    default:
      if (a.is_null() || b.is_null()) return false;
      if (op == BuiltinOp::Eq) return a == b;
      if (op == BuiltinOp::Neq) return a != b;
      return order_holds(op, compare_ints(a, b));
  }
}

namespace {

template <class Accept>
AnswerSet evaluate(const Instance& d, const Query& q, Accept&& accept) {
  VarIndex vars(q.body);
  std::vector<std::size_t> out_slots;
  for (const auto& v : q.free_vars) out_slots.push_back(vars.at(v));
  for (const auto& b : q.builtins) {
    if (b.lhs.is_var()) vars.at(b.lhs.var_name());
    if (!is_unary(b.op) && b.rhs.is_var()) vars.at(b.rhs.var_name());
  }
  AnswerSet out;
  for_each_match(d, q.body, vars, [&](const Match& m) {
    if (!accept(vars, m.binding)) return;
    Row r;
    r.reserve(out_slots.size());
    for (auto s : out_slots) r.push_back(m.binding[s]);
    out.rows.insert(std::move(r));
  });
  return out;
}

} // namespace

AnswerSet eval_classical(const Instance& d, const Query& q) {
  return evaluate(d, q, [&](const VarIndex& vars, const std::vector<Value>& bnd) {
    for (const auto& b : q.builtins) {
      const Value& l = term_value(b.lhs, vars, bnd);
      const Value& r = is_unary(b.op) ? l : term_value(b.rhs, vars, bnd);
      if (!holds_classical(b.op, l, r)) return false;
    }
    return true;
  });
}

AnswerSet eval_n(const Instance& d, const Query& q) {
  std::set<std::string> relevant = relevant_vars(q);
  return evaluate(d, q, [&](const VarIndex& vars, const std::vector<Value>& bnd) {
    for (const auto& v : relevant)
      if (bnd[vars.at(v)].is_null()) return false;
    for (const auto& b : q.builtins) {
      const Value& l = term_value(b.lhs, vars, bnd);
      const Value& r = is_unary(b.op) ? l : term_value(b.rhs, vars, bnd);
      if (!holds_null_semantics(b.op, l, r)) return false;
    }
    return true;
  });
}

Query rewrite_query(const Query& q) {
  Query out = q;
  for (auto& b : out.builtins) {
    if (b.op == BuiltinOp::IsNull) b = Builtin{BuiltinOp::Eq, b.lhs, Term(Value::null())};
    else if (b.op == BuiltinOp::IsNotNull) b = Builtin{BuiltinOp::Neq, b.lhs, Term(Value::null())};
  }
  std::set<std::string> relevant = relevant_vars(q);
  // Guards follow the order of first occurrence in the body.
  for (const auto& v : body_variables(q.body))
    if (relevant.count(v)) out.builtins.push_back({BuiltinOp::Neq, Term::var(v), Term(Value::null())});
  return out;
}

} // namespace secview
