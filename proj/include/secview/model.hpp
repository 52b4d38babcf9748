#pragma once

#include <secview/value.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace secview {

struct Column {
  std::string name;
  Sort sort = Sort::Any;
};

struct RelationSchema {
  std::string name;
  std::vector<Column> columns;

  std::size_t arity() const noexcept { return columns.size(); }
};

// Database predicates with positional column sorts. Relation names are unique.
class Schema {
public:
  Schema() = default;

  // Throws SemanticError on a duplicate name or zero arity.
  void add(RelationSchema rel);

  const RelationSchema* find(const std::string& name) const;
  // Throws SemanticError for an unknown relation.
  const RelationSchema& at(const std::string& name) const;
  const std::vector<RelationSchema>& relations() const noexcept { return relations_; }

  friend bool operator==(const Schema&, const Schema&);

private:
  std::vector<RelationSchema> relations_;
};

using TupleId = std::uint32_t;

struct Tuple {
  TupleId tid = 0;
  Row values;

  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

// Coordinates of one attribute value; pos is 1-based.
struct Cell {
  std::string relation;
  TupleId tid = 0;
  std::size_t pos = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Cells replaced by null. std::set keeps the canonical (relation, tid, pos) order.
using ChangeSet = std::set<Cell>;

std::string to_string(const Cell& c);
std::string to_string(const ChangeSet& cs);

// A finite set of id-carrying tuples over a schema. Tuples of each relation are
// kept sorted by tid, so equality ignores the order in which they were added.
class Instance {
public:
  explicit Instance(std::shared_ptr<const Schema> schema);

  const Schema& schema() const noexcept { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const noexcept { return schema_; }

  // Checks arity and sorts. A zero tid means "next free id". Returns the tid used.
  TupleId add(const std::string& relation, Row values, TupleId tid = 0);

  const std::vector<Tuple>& tuples(const std::string& relation) const;
  const Tuple* find(const std::string& relation, TupleId tid) const;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  // Every non-null cell, canonically ordered.
  std::vector<Cell> non_null_cells() const;

  // Facts syntax with explicit ids: "@1 P(1,2)." one per line.
  std::string to_string() const;

  friend bool operator==(const Instance& a, const Instance& b);

private:
  friend Instance apply_changes(const Instance&, const ChangeSet&);
  std::shared_ptr<const Schema> schema_;
  std::map<std::string, std::vector<Tuple>> rels_;
};

// Replaces exactly the addressed cells by null. Throws SemanticError when a
// cell does not exist or already holds null.
Instance apply_changes(const Instance& base, const ChangeSet& cs);

// Inverse of apply_changes for base-correlated null degradations. Throws
// SemanticError when the instances are not correlated or a differing cell is
// not null in `other`.
ChangeSet diff_changes(const Instance& base, const Instance& other);

} // namespace secview
