#pragma once

#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <set>
#include <string>
#include <vector>

namespace secview {

// Answers to a query: one row per answer, rows as long as the free-variable
// list. A boolean query answers yes iff it contains the empty row.
struct AnswerSet {
  std::set<Row> rows;

  bool yes() const { return rows.count(Row{}) > 0; }
  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
  std::string to_string() const;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

AnswerSet intersect(const AnswerSet& a, const AnswerSet& b);

// Variables that occur at least twice in the matrix (database atoms and
// built-ins), not counting isnull(v), isnotnull(v), v op null and null op v.
std::set<std::string> relevant_vars(const std::vector<Atom>& body, const std::vector<Builtin>& builtins);
inline std::set<std::string> relevant_vars(const Query& q) { return relevant_vars(q.body, q.builtins); }

// Built-in truth under classical semantics: null is an ordinary constant for
// = and !=, order comparisons with a null operand are false.
bool holds_classical(BuiltinOp op, const Value& a, const Value& b);
// Built-in truth under the null semantics: = , != and order comparisons need
// both operands non-null; isnull / isnotnull test for null.
bool holds_null_semantics(BuiltinOp op, const Value& a, const Value& b);

// Standard conjunctive-query evaluation with null treated as any constant.
AnswerSet eval_classical(const Instance& d, const Query& q);

// SQL-null semantics: relevant variables never bind null and built-ins follow
// holds_null_semantics.
AnswerSet eval_n(const Instance& d, const Query& q);

// Adds `v != null` for every relevant variable and replaces isnull(t) /
// isnotnull(t) by t = null / t != null. Classical evaluation of the result
// equals eval_n of the input.
Query rewrite_query(const Query& q);

} // namespace secview
