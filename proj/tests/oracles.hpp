#pragma once
// Brute-force reference implementations used only by the tests. They share
// no code with the library evaluators.

#include <secview/eval.hpp>
#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace secview;

enum class Semantics { Classical, Null };

inline std::set<Value> domain(const Instance& d, const Query& q) {
  std::set<Value> dom{Value::null()};
  for (const auto& rel : d.schema().relations())
    for (const auto& t : d.tuples(rel.name))
      for (const auto& v : t.values) dom.insert(v);
  for (const auto& a : q.body)
    for (const auto& t : a.args)
      if (!t.is_var()) dom.insert(t.constant());
  for (const auto& b : q.builtins)
    for (const Term* t : {&b.lhs, &b.rhs})
      if (!t->is_var()) dom.insert(t->constant());
  return dom;
}

// Occurrence count in atoms and two-place built-ins not mentioning null.
inline std::set<std::string> relevant(const Query& q) {
  std::map<std::string, int> n;
  for (const auto& a : q.body)
    for (const auto& t : a.args)
      if (t.is_var()) n[t.var_name()]++;
  for (const auto& b : q.builtins) {
    if (b.op == BuiltinOp::IsNull || b.op == BuiltinOp::IsNotNull) continue;
    if (b.lhs.is_null_constant() || b.rhs.is_null_constant()) continue;
    if (b.lhs.is_var()) n[b.lhs.var_name()]++;
    if (b.rhs.is_var()) n[b.rhs.var_name()]++;
  }
  std::set<std::string> out;
  for (auto& [k, c] : n)
    if (c > 1) out.insert(k);
  return out;
}

inline bool builtin(Semantics sem, BuiltinOp op, const Value& a, const Value& b) {
  if (op == BuiltinOp::IsNull) return a.is_null();
  if (op == BuiltinOp::IsNotNull) return !a.is_null();
  bool has_null = a.is_null() || b.is_null();
  if (op == BuiltinOp::Eq) return sem == Semantics::Classical ? a == b : (!has_null && a == b);
  if (op == BuiltinOp::Neq) return sem == Semantics::Classical ? !(a == b) : (!has_null && !(a == b));
  if (has_null) return false;
  long x = a.as_int(), y = b.as_int();
  switch (op) {
    case BuiltinOp::Lt: return x < y;
    case BuiltinOp::Gt: return x > y;
    case BuiltinOp::Le: return x <= y;
    case BuiltinOp::Ge: return x >= y;
    default: return false;
  }
}

// Tries every assignment of the body variables over the active domain.
inline AnswerSet eval(const Instance& d, const Query& q, Semantics sem) {
  std::vector<Value> dom;
  for (auto& v : domain(d, q)) dom.push_back(v);
  std::vector<std::string> vars;
  for (const auto& a : q.body)
    for (const auto& t : a.args)
      if (t.is_var() && std::find(vars.begin(), vars.end(), t.var_name()) == vars.end()) vars.push_back(t.var_name());
  auto rel = sem == Semantics::Null ? relevant(q) : std::set<std::string>{};

  AnswerSet out;
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    std::map<std::string, Value> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = dom[idx[i]];
    auto val = [&](const Term& t) { return t.is_var() ? env.at(t.var_name()) : t.constant(); };
    bool ok = true;
    for (auto& v : rel) ok = ok && !env.at(v).is_null();
    for (const auto& a : q.body) {
      if (!ok) break;
      Row r;
      for (const auto& t : a.args) r.push_back(val(t));
      bool found = false;
      for (const auto& t : d.tuples(a.predicate)) found = found || t.values == r;
      ok = found;
    }
    for (const auto& b : q.builtins) {
      if (!ok) break;
      ok = builtin(sem, b.op, val(b.lhs), b.op == BuiltinOp::IsNull || b.op == BuiltinOp::IsNotNull ? Value{} : val(b.rhs));
    }
    if (ok) {
      Row r;
      for (const auto& v : q.free_vars) r.push_back(env.at(v));
      out.rows.insert(r);
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == dom.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

} // namespace oracle
