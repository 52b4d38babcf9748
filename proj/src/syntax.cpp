#include <secview/syntax.hpp>

#include <algorithm>

namespace secview {

namespace {

std::string join_terms(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ",";
    out += ts[i].to_string();
  }
  return out;
}

std::string join_vars(const std::vector<std::string>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += vs[i];
  }
  return out;
}

std::string body_text(const std::vector<Atom>& body, const std::vector<Builtin>& bs) {
  std::string out;
  for (const auto& a : body) {
    if (!out.empty()) out += ", ";
    out += a.to_string();
  }
  for (const auto& b : bs) {
    if (!out.empty()) out += ", ";
    out += b.to_string();
  }
  return out;
}

} // namespace

std::string Atom::to_string() const { return predicate + "(" + join_terms(args) + ")"; }

const char* op_symbol(BuiltinOp op) noexcept {
  switch (op) {
    case BuiltinOp::Eq: return "=";
    case BuiltinOp::Neq: return "!=";
    case BuiltinOp::Lt: return "<";
    case BuiltinOp::Gt: return ">";
    case BuiltinOp::Le: return "<=";
    case BuiltinOp::Ge: return ">=";
    case BuiltinOp::IsNull: return "isnull";
    case BuiltinOp::IsNotNull: return "isnotnull";
  }
  return "?";
}

bool is_unary(BuiltinOp op) noexcept { return op == BuiltinOp::IsNull || op == BuiltinOp::IsNotNull; }

bool is_order(BuiltinOp op) noexcept {
  return op == BuiltinOp::Lt || op == BuiltinOp::Gt || op == BuiltinOp::Le || op == BuiltinOp::Ge;
}

BuiltinOp negate(BuiltinOp op) noexcept {
  switch (op) {
    case BuiltinOp::Eq: return BuiltinOp::Neq;
    case BuiltinOp::Neq: return BuiltinOp::Eq;
    case BuiltinOp::Lt: return BuiltinOp::Ge;
    case BuiltinOp::Ge: return BuiltinOp::Lt;
    case BuiltinOp::Gt: return BuiltinOp::Le;
    case BuiltinOp::Le: return BuiltinOp::Gt;
    case BuiltinOp::IsNull: return BuiltinOp::IsNotNull;
    case BuiltinOp::IsNotNull: return BuiltinOp::IsNull;
  }
  return op;
}

bool Builtin::compares_with_null() const noexcept {
  return !is_unary(op) && (lhs.is_null_constant() || rhs.is_null_constant());
}

std::string Builtin::to_string() const {
  if (is_unary(op)) return std::string(op_symbol(op)) + "(" + lhs.to_string() + ")";
  return lhs.to_string() + " " + op_symbol(op) + " " + rhs.to_string();
}

std::string ViewDef::to_string() const {
  return name + "(" + join_vars(head) + ") :- " + body_text(body, phi) + ".";
}

std::string Query::to_string() const { return "?(" + join_vars(free_vars) + ") :- " + body_text(body, builtins) + "."; }

Query as_query(const ViewDef& v) { return Query{v.head, v.body, v.phi}; }

const char* class_name(QueryClass c) noexcept {
  switch (c) {
    case QueryClass::ConjSigma: return "ConjSigma";
    case QueryClass::ConjNullSql: return "ConjNullSql";
    case QueryClass::ConjNullGeneral: return "ConjNullGeneral";
  }
  return "?";
}

QueryClass classify_query(const Query& q) {
  bool mentions_null = false;
  bool null_builtin = false;
  bool null_equality = false;
  for (const auto& a : q.body)
    for (const auto& t : a.args) mentions_null = mentions_null || t.is_null_constant();
  for (const auto& b : q.builtins) {
    if (is_unary(b.op)) null_builtin = true;
    if (b.lhs.is_null_constant() || (!is_unary(b.op) && b.rhs.is_null_constant())) mentions_null = true;
    if ((b.op == BuiltinOp::Eq || b.op == BuiltinOp::Neq) && b.compares_with_null()) null_equality = true;
  }
  if (!mentions_null && !null_builtin) return QueryClass::ConjSigma;
  if (!null_equality) return QueryClass::ConjNullSql;
  return QueryClass::ConjNullGeneral;
}

std::vector<std::string> body_variables(const std::vector<Atom>& body) {
  std::vector<std::string> out;
  for (const auto& a : body)
    for (const auto& t : a.args)
      if (t.is_var() && std::find(out.begin(), out.end(), t.var_name()) == out.end()) out.push_back(t.var_name());
  return out;
}

} // namespace secview
