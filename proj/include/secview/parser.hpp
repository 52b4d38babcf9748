#pragma once

#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <memory>
#include <string_view>
#include <vector>

namespace secview {

// Concrete syntax (comments start with %):
//   schema  relation Marks(studentID:sym, courseID:sym, mark:int).
//   facts   P(1,2).  @7 R(e,null).
//   views   Vs(X,Z) :- P(X,Y), R(Y,Z), Y < 3.
//   query   ?(X) :- R(X,Y), isnull(Y).
// Variables start with an uppercase letter or '_'; lowercase identifiers are
// symbols, "..." strings, and `null` is the null constant. An identifier
// directly followed by '(' names a predicate.
//
// Syntax errors throw ParseError with a position; schema violations throw
// SemanticError.

Schema parse_schema(std::string_view text);

Instance parse_facts(std::string_view text, std::shared_ptr<const Schema> schema);

ViewDef parse_view(std::string_view text, const Schema& schema);
std::vector<ViewDef> parse_views(std::string_view text, const Schema& schema);

Query parse_query(std::string_view text, const Schema& schema);

// Schema-free variants used for printing round trips; no resolution checks.
ViewDef parse_view_unchecked(std::string_view text);
Query parse_query_unchecked(std::string_view text);

std::string to_string(const Schema& schema);

// Resolution checks shared by the parser and programmatic construction:
// known predicates, arity, constant sorts, safety, order comparisons on
// int-compatible terms. Throws SemanticError.
void check_view(const ViewDef& v, const Schema& schema);
void check_query(const Query& q, const Schema& schema);

} // namespace secview
