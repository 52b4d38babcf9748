#pragma once

#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace secview::asp {

// t: new or old, u: has been updated, a: is being updated, s: stays.
enum class Annotation { T, U, A, S };

char annotation_letter(Annotation a) noexcept;

// Disjunctive rule; an empty head is a constraint, an empty body a fact.
struct Rule {
  std::vector<Atom> head;
  std::vector<Atom> pos;
  std::vector<Atom> neg;
  std::vector<Builtin> builtins;

  bool is_fact() const noexcept { return head.size() == 1 && pos.empty() && neg.empty() && builtins.empty(); }
  // Dialect-neutral text: disjunction as '|', default negation as 'not'.
  std::string to_string() const;
  std::string to_string(const std::string& disjunction) const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Throws SemanticError when a head, negative or built-in variable does not
// occur in a positive body atom.
void check_safety(const Rule& r);

// Atom text with the parentheses omitted for zero arity.
std::string atom_text(const Atom& a);

struct Program {
  std::vector<Rule> rules;

  std::string to_string() const;
  friend bool operator==(const Program&, const Program&) = default;
};

struct CompileOptions {
  // Carry the tuple id as the first argument of every relation atom. Without
  // ids the program has the literal shape of the worked example, but two
  // tuples degrading to the same row can no longer be told apart.
  bool tuple_ids = true;
};

// Predicate names used in programs. Relation names are lowercased; the base
// copy holds the facts and each annotation gets a suffix.
std::string base_predicate(const std::string& relation);
std::string annotated_predicate(const std::string& relation, Annotation a);
std::string aux_predicate(const std::string& view);
inline const char* answer_predicate() { return "ans"; }

struct AnnotatedProgram {
  Program program;
  std::shared_ptr<const Schema> schema;
  std::vector<ViewDef> views;
  CompileOptions options;

  // Relation and annotation for an annotated predicate name, if any.
  std::optional<std::pair<std::string, Annotation>> decode(const std::string& predicate) const;
  // Relation for a base predicate name, if any.
  std::optional<std::string> decode_base(const std::string& predicate) const;
};

// The secrecy program for d and the views. Throws SemanticError when lowered
// predicate names clash or a view does not fit the schema.
AnnotatedProgram compile_program(const Instance& d, const std::vector<ViewDef>& views, const CompileOptions& opts = {});

// ans(free vars) over s-annotated atoms of the rewritten query.
Rule compile_query_program(const Query& q, const CompileOptions& opts = {});

struct DenialConstraint {
  std::string variable; // the head variable required non-null
  Rule rule;            // constraint over base predicates
  std::string text;     // first-order form
};

// One constraint per distinct head variable x: not exists (body, phi, x != null).
std::vector<DenialConstraint> to_denial_constraints(const ViewDef& v);

} // namespace secview::asp
