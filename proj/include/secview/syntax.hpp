#pragma once

#include <secview/value.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace secview {

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

// A variable or a domain constant.
class Term {
public:
  Term(Var v) : rep_(std::move(v)) {}
  Term(Value c) : rep_(std::move(c)) {}

  static Term var(std::string name) { return Term(Var{std::move(name)}); }

  bool is_var() const noexcept { return rep_.index() == 0; }
  const std::string& var_name() const { return std::get<0>(rep_).name; }
  const Value& constant() const { return std::get<1>(rep_); }
  bool is_null_constant() const noexcept { return !is_var() && constant().is_null(); }

  std::string to_string() const { return is_var() ? var_name() : constant().to_string(); }

  friend bool operator==(const Term&, const Term&) = default;

private:
  std::variant<Var, Value> rep_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class BuiltinOp : std::uint8_t { Eq, Neq, Lt, Gt, Le, Ge, IsNull, IsNotNull };

const char* op_symbol(BuiltinOp op) noexcept;
bool is_unary(BuiltinOp op) noexcept;
bool is_order(BuiltinOp op) noexcept;
// De Morgan complement: < and >=, > and <=, = and !=, isnull and isnotnull.
BuiltinOp negate(BuiltinOp op) noexcept;

// Built-in atom; unary ops use only `lhs`.
struct Builtin {
  BuiltinOp op = BuiltinOp::Eq;
  Term lhs = Term(Value{});
  Term rhs = Term(Value{});

  // True for `t op null` and `null op t`.
  bool compares_with_null() const noexcept;
  std::string to_string() const;
  friend bool operator==(const Builtin&, const Builtin&) = default;
};

// Vs(x̄) :- R1(x̄1), ..., Rn(x̄n), phi.
struct ViewDef {
  std::string name;
  std::vector<std::string> head;
  std::vector<Atom> body;
  std::vector<Builtin> phi;

  std::string to_string() const;
  friend bool operator==(const ViewDef&, const ViewDef&) = default;
};

// ?(x̄) :- body. Every body variable not listed in free_vars is existential.
// free_vars may repeat a variable.
struct Query {
  std::vector<std::string> free_vars;
  std::vector<Atom> body;
  std::vector<Builtin> builtins;

  std::string to_string() const;
  friend bool operator==(const Query&, const Query&) = default;
};

Query as_query(const ViewDef& v);

enum class QueryClass : std::uint8_t { ConjSigma, ConjNullSql, ConjNullGeneral };

const char* class_name(QueryClass c) noexcept;

// Most specific class: ConjSigma (no null, no isnull/isnotnull), else
// ConjNullSql (no =/!= against null), else ConjNullGeneral.
QueryClass classify_query(const Query& q);

// Variables of the database atoms, in order of first occurrence.
std::vector<std::string> body_variables(const std::vector<Atom>& body);

} // namespace secview
