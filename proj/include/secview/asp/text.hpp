#pragma once

#include <secview/asp/program.hpp>
#include <secview/asp/solver.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace secview::asp {

enum class Dialect { Dlv, Clingo };

const char* dialect_name(Dialect d) noexcept;
// Throws std::invalid_argument for anything but "dlv" and "clingo".
Dialect parse_dialect(std::string_view name);

// Disjunction is written `v` for dlv and `|` for clingo.
std::string export_program(const Program& p, Dialect d);
inline std::string export_program(const AnnotatedProgram& p, Dialect d) { return export_program(p.program, d); }

// Reads either dialect: disjunction as `|`, `;` or `v`, default negation as
// `not`, built-ins =, !=, <>, <, >, <=, >=. Throws ParseError.
Program parse_program(std::string_view text);

// Answer sets from solver output: `{a, b(1,2)}` lines, or clingo's
// `Answer: N` followed by a line of space-separated atoms. Other lines are
// ignored. Throws ParseError on a malformed atom.
std::vector<StableModel> parse_answer_sets(std::string_view text);

} // namespace secview::asp
