#include <secview/parser.hpp>

#include "lexer.hpp"

#include <secview/error.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>

namespace secview {

using detail::Lexer;
using detail::Tok;
using detail::Token;

namespace {

bool is_var_name(const std::string& s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

std::int64_t to_int(const Token& t) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{}) throw ParseError("integer out of range", t.line, t.col);
  return v;
}

Value parse_constant(Lexer& lx) {
  const Token& t = lx.peek();
  switch (t.kind) {
    case Tok::Int: return Value::integer(to_int(lx.next()));
    case Tok::String: return Value::string(lx.next().text);
    case Tok::Ident:
      if (t.text == "null") {
        lx.next();
        return Value::null();
      }
      if (!is_var_name(t.text)) return Value::symbol(lx.next().text);
      break;
    default: break;
  }
  lx.fail("expected a constant");
}

Term parse_term(Lexer& lx) {
  if (lx.at(Tok::Ident) && is_var_name(lx.peek().text)) return Term::var(lx.next().text);
  return Term(parse_constant(lx));
}

std::vector<std::string> parse_var_list(Lexer& lx) {
  std::vector<std::string> vars;
  lx.expect(Tok::LParen, "'('");
  if (!lx.at(Tok::RParen)) {
    for (;;) {
      if (!lx.at(Tok::Ident)) lx.fail("expected a variable");
      if (!is_var_name(lx.peek().text)) lx.fail("head terms must be variables");
      vars.push_back(lx.next().text);
      if (!lx.at(Tok::Comma)) break;
      lx.next();
    }
  }
  lx.expect(Tok::RParen, "')'");
  return vars;
}

std::optional<BuiltinOp> op_from(const std::string& s) {
  if (s == "=") return BuiltinOp::Eq;
  if (s == "!=") return BuiltinOp::Neq;
  if (s == "<") return BuiltinOp::Lt;
  if (s == ">") return BuiltinOp::Gt;
  if (s == "<=") return BuiltinOp::Le;
  if (s == ">=") return BuiltinOp::Ge;
  return std::nullopt;
}

void parse_body(Lexer& lx, std::vector<Atom>& atoms, std::vector<Builtin>& builtins) {
  for (;;) {
    const Token& t = lx.peek();
    if (t.kind == Tok::Ident && (t.text == "isnull" || t.text == "isnotnull")) {
      BuiltinOp op = t.text == "isnull" ? BuiltinOp::IsNull : BuiltinOp::IsNotNull;
      lx.next();
      lx.expect(Tok::LParen, "'('");
      Term arg = parse_term(lx);
      lx.expect(Tok::RParen, "')'");
      builtins.push_back({op, std::move(arg), Term(Value{})});
    } else if (t.kind == Tok::Ident && t.text != "null") {
      Token name = lx.next();
      if (lx.at(Tok::LParen)) {
        lx.next();
        Atom a{name.text, {}};
        if (!lx.at(Tok::RParen)) {
          for (;;) {
            a.args.push_back(parse_term(lx));
            if (!lx.at(Tok::Comma)) break;
            lx.next();
          }
        }
        lx.expect(Tok::RParen, "')'");
        atoms.push_back(std::move(a));
      } else {
        Term lhs = is_var_name(name.text) ? Term::var(name.text) : Term(Value::symbol(name.text));
        if (!lx.at(Tok::Op)) lx.fail("expected a comparison operator");
        auto op = op_from(lx.next().text);
        builtins.push_back({*op, std::move(lhs), parse_term(lx)});
      }
    } else {
      Term lhs = parse_term(lx);
      if (!lx.at(Tok::Op)) lx.fail("expected a comparison operator");
      auto op = op_from(lx.next().text);
      builtins.push_back({*op, std::move(lhs), parse_term(lx)});
    }
    if (!lx.at(Tok::Comma)) break;
    lx.next();
  }
  lx.expect(Tok::Dot, "'.'");
}

ViewDef parse_one_view(Lexer& lx) {
  ViewDef v;
  Token name = lx.expect(Tok::Ident, "a view name");
  v.name = name.text;
  v.head = parse_var_list(lx);
  lx.expect(Tok::If, "':-'");
  parse_body(lx, v.body, v.phi);
  return v;
}

Query parse_one_query(Lexer& lx) {
  Query q;
  lx.expect(Tok::Question, "'?'");
  q.free_vars = parse_var_list(lx);
  lx.expect(Tok::If, "':-'");
  parse_body(lx, q.body, q.builtins);
  return q;
}

// Sorts of the columns each variable occupies.
std::map<std::string, std::vector<Sort>> variable_sorts(const std::vector<Atom>& body, const Schema& schema) {
  std::map<std::string, std::vector<Sort>> out;
  for (const auto& a : body) {
    const RelationSchema& rs = schema.at(a.predicate);
    if (a.args.size() != rs.arity()) {
      throw SemanticError("arity mismatch for " + a.predicate + ": expected " + std::to_string(rs.arity()) +
                          ", got " + std::to_string(a.args.size()));
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const Term& t = a.args[i];
      if (t.is_var()) {
        out[t.var_name()].push_back(rs.columns[i].sort);
      } else if (!value_fits(t.constant(), rs.columns[i].sort)) {
        throw SemanticError("constant " + t.to_string() + " does not fit " + a.predicate + "[" +
                            std::to_string(i + 1) + "] of sort " + sort_name(rs.columns[i].sort));
      }
    }
  }
  return out;
}

void check_body(const std::vector<Atom>& body, const std::vector<Builtin>& builtins, const Schema& schema,
                const std::vector<std::string>& head, const char* what) {
  if (body.empty()) throw SemanticError(std::string(what) + " body must contain a database atom");
  auto sorts = variable_sorts(body, schema);
  for (const auto& h : head)
    if (!sorts.count(h)) throw SemanticError("unsafe variable " + h + " in " + what + " head");
  for (const auto& b : builtins) {
    std::vector<const Term*> args{&b.lhs};
    if (!is_unary(b.op)) args.push_back(&b.rhs);
    for (const Term* t : args) {
      if (t->is_var()) {
        auto it = sorts.find(t->var_name());
        if (it == sorts.end()) throw SemanticError("unsafe variable " + t->var_name() + " in built-in " + b.to_string());
        if (is_order(b.op)) {
          for (Sort s : it->second)
            if (s == Sort::Sym || s == Sort::Str)
              throw SemanticError("order comparison " + b.to_string() + " on non-int variable " + t->var_name());
        }
      } else if (is_order(b.op) && !t->constant().is_null() && !t->constant().is_int()) {
        throw SemanticError("order comparison " + b.to_string() + " on non-int constant");
      }
    }
  }
}

} // namespace

Schema parse_schema(std::string_view text) {
  Lexer lx(text);
  Schema schema;
  while (!lx.at(Tok::End)) {
    if (!lx.at_ident("relation")) lx.fail("expected 'relation'");
    Token kw = lx.next();
    Token name = lx.expect(Tok::Ident, "a relation name");
    RelationSchema rel{name.text, {}};
    lx.expect(Tok::LParen, "'('");
    for (;;) {
      Token col = lx.expect(Tok::Ident, "a column name");
      Sort sort = Sort::Any;
      if (lx.at(Tok::Colon)) {
        lx.next();
        Token s = lx.expect(Tok::Ident, "a sort");
        if (s.text == "int") sort = Sort::Int;
        else if (s.text == "sym") sort = Sort::Sym;
        else if (s.text == "str") sort = Sort::Str;
        else if (s.text == "any") sort = Sort::Any;
        else throw ParseError("unknown sort '" + s.text + "'", s.line, s.col);
      }
      rel.columns.push_back({col.text, sort});
      if (!lx.at(Tok::Comma)) break;
      lx.next();
    }
    lx.expect(Tok::RParen, "')'");
    if (lx.at(Tok::Dot)) lx.next();
    if (schema.find(rel.name)) {
      throw SemanticError(std::to_string(kw.line) + ":" + std::to_string(kw.col) + ": duplicate relation " + rel.name);
    }
    schema.add(std::move(rel));
  }
  return schema;
}

Instance parse_facts(std::string_view text, std::shared_ptr<const Schema> schema) {
  Lexer lx(text);
  Instance inst(schema);
  while (!lx.at(Tok::End)) {
    TupleId tid = 0;
    if (lx.at(Tok::At)) {
      lx.next();
      Token id = lx.expect(Tok::Int, "a tuple id");
      std::int64_t v = to_int(id);
      if (v <= 0 || v > std::numeric_limits<TupleId>::max()) throw ParseError("tuple id must be positive", id.line, id.col);
      tid = static_cast<TupleId>(v);
    }
    Token name = lx.expect(Tok::Ident, "a relation name");
    lx.expect(Tok::LParen, "'('");
    Row values;
    for (;;) {
      values.push_back(parse_constant(lx));
      if (!lx.at(Tok::Comma)) break;
      lx.next();
    }
    lx.expect(Tok::RParen, "')'");
    lx.expect(Tok::Dot, "'.'");
    try {
      inst.add(name.text, std::move(values), tid);
    } catch (const SemanticError& e) {
      throw SemanticError(std::to_string(name.line) + ":" + std::to_string(name.col) + ": " + e.what());
    }
  }
  return inst;
}

ViewDef parse_view_unchecked(std::string_view text) {
  Lexer lx(text);
  ViewDef v = parse_one_view(lx);
  if (!lx.at(Tok::End)) lx.fail("expected end of view definition");
  return v;
}

ViewDef parse_view(std::string_view text, const Schema& schema) {
  ViewDef v = parse_view_unchecked(text);
  check_view(v, schema);
  return v;
}

std::vector<ViewDef> parse_views(std::string_view text, const Schema& schema) {
  Lexer lx(text);
  std::vector<ViewDef> views;
  while (!lx.at(Tok::End)) {
    ViewDef v = parse_one_view(lx);
    check_view(v, schema);
    for (const auto& w : views)
      if (w.name == v.name) throw SemanticError("duplicate view " + v.name);
    views.push_back(std::move(v));
  }
  return views;
}

Query parse_query_unchecked(std::string_view text) {
  Lexer lx(text);
  Query q = parse_one_query(lx);
  if (!lx.at(Tok::End)) lx.fail("expected end of query");
  return q;
}

Query parse_query(std::string_view text, const Schema& schema) {
  Query q = parse_query_unchecked(text);
  check_query(q, schema);
  return q;
}

void check_view(const ViewDef& v, const Schema& schema) {
  if (schema.find(v.name)) throw SemanticError("view name " + v.name + " clashes with a relation");
  check_body(v.body, v.phi, schema, v.head, "view");
}

void check_query(const Query& q, const Schema& schema) { check_body(q.body, q.builtins, schema, q.free_vars, "query"); }

std::string to_string(const Schema& schema) {
  std::ostringstream os;
  for (const auto& r : schema.relations()) {
    os << "relation " << r.name << '(';
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      os << (i ? ", " : "") << r.columns[i].name << ':' << sort_name(r.columns[i].sort);
    os << ").\n";
  }
  return os.str();
}

} // namespace secview
