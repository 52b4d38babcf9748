#pragma once

#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace secview {

// Relation column, 1-based.
struct AttrPos {
  std::string relation;
  std::size_t pos = 0;

  friend bool operator==(const AttrPos&, const AttrPos&) = default;
  friend auto operator<=>(const AttrPos&, const AttrPos&) = default;
};

std::string to_string(const AttrPos& a);
std::string to_string(const std::set<AttrPos>& s);

struct AttrSets {
  std::set<AttrPos> combination; // positions of relevant variables
  std::set<AttrPos> secrecy;     // positions of head variables
  std::set<AttrPos> srelevant;   // union
};

// Variables of a view whose positions form the combination attributes.
std::set<std::string> combination_vars(const ViewDef& v);

AttrSets attr_sets(const ViewDef& v);

enum class CpGranularity {
  PerAtom,    // one atom per body atom, every combination occurrence nulled
  PerPosition // one atom per combination occurrence, only that position nulled
};

// Body atoms with variable occurrences replaced by null. cp_body[i] / sp_body[i]
// give the index of the body atom each head atom was derived from.
struct HeadAtomSets {
  std::vector<Atom> cp;
  std::vector<Atom> sp;
  std::vector<std::size_t> cp_body;
  std::vector<std::size_t> sp_body;
};

HeadAtomSets head_atom_sets(const ViewDef& v, CpGranularity g = CpGranularity::PerAtom);

// N-answers of the view are empty or the single all-null row.
bool is_null_view(const Instance& d, const ViewDef& v);

bool admissible_direct(const Instance& d, const std::vector<ViewDef>& views);

// Classical check of: every body match has a null combination variable, or
// all head variables null, or some negated built-in conjunct true.
bool admissible_by_sentence(const Instance& d, const std::vector<ViewDef>& views);

// Runs both checks; throws InconsistencyError if they disagree.
bool is_admissible(const Instance& d, const std::vector<ViewDef>& views);

// Printable form of the classical sentence for one view.
std::string null_view_sentence(const ViewDef& v);

} // namespace secview
