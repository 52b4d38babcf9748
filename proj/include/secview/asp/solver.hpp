#pragma once

#include <secview/answers.hpp>
#include <secview/asp/program.hpp>
#include <secview/instances.hpp>

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace secview::asp {

struct GroundAtom {
  std::string predicate;
  std::vector<Value> args;

  std::string to_string() const;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b);
};

// Rule over atom ids.
struct GroundRule {
  std::vector<std::size_t> head;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
};

struct GroundProgram {
  std::vector<GroundAtom> atoms; // id -> atom, sorted
  std::vector<GroundRule> rules;

  std::size_t id(const GroundAtom& a) const; // throws std::out_of_range
  std::string to_string() const;
};

// Instantiates every rule over the atoms derivable when all disjuncts may hold
// and negation is ignored. Built-ins are evaluated away; negative literals over
// atoms that can never hold are dropped. Throws SemanticError for unsafe rules.
GroundProgram ground(const Program& p);

using StableModel = std::set<GroundAtom>;

struct SolveOptions {
  // Leaves of the search tree checked for stability.
  std::size_t max_candidates = std::size_t{1} << 20;
  std::size_t max_models = 0; // 0: all
};

// All stable models, sorted. Throws BoundExceeded past max_candidates.
std::vector<StableModel> stable_models(const GroundProgram& g, const SolveOptions& opts = {});

// The instance made of the s-atoms of each model, with the tids of the original
// tuples. Without tuple ids in the program the tids are recovered by matching
// each s-atom to a base tuple it is less informative than. Throws
// SemanticError when the s-atoms of a model cannot be traced back to d.
// Result sorted by change set, duplicates removed.
std::vector<SecrecySolution> models_to_instances(const std::vector<StableModel>& models, const AnnotatedProgram& p,
                                                 const Instance& d);

// Answers true in every stable model of the secrecy program plus the query
// rule. Throws InconsistencyError when there is no stable model.
AnswerSet cautious_answers(const Instance& d, const std::vector<ViewDef>& views, const Query& q,
                           const SolveOptions& opts = {}, const CompileOptions& copts = {});

// The ans atoms of a set of models, intersected.
AnswerSet cautious_answers(const std::vector<StableModel>& models);

} // namespace secview::asp
