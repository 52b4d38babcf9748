#include <secview/asp/text.hpp>

#include "../lexer.hpp"

#include <secview/error.hpp>

#include <stdexcept>

namespace secview::asp {

using detail::Lexer;
using detail::Tok;

const char* dialect_name(Dialect d) noexcept { return d == Dialect::Dlv ? "dlv" : "clingo"; }

Dialect parse_dialect(std::string_view name) {
  if (name == "dlv") return Dialect::Dlv;
  if (name == "clingo") return Dialect::Clingo;
  throw std::invalid_argument("unsupported dialect: " + std::string(name));
}

std::string export_program(const Program& p, Dialect d) {
  std::string out;
  for (const auto& r : p.rules) out += r.to_string(d == Dialect::Dlv ? "v" : "|") + "\n";
  return out;
}

namespace {

bool is_variable(const std::string& id) {
  return !id.empty() && (std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_');
}

Term constant_or_var(const detail::Token& t) {
  switch (t.kind) {
    case Tok::Int: return Term(Value::integer(std::stoll(t.text)));
    case Tok::String: return Term(Value::string(t.text));
    case Tok::Ident:
      if (is_variable(t.text)) return Term::var(t.text);
      if (t.text == "null") return Term(Value::null());
      return Term(Value::symbol(t.text));
    default: throw ParseError("expected a term, got '" + t.text + "'", t.line, t.col);
  }
}

std::vector<Term> arguments(Lexer& lx) {
  std::vector<Term> args;
  if (!lx.at(Tok::LParen)) return args;
  lx.next();
  for (;;) {
    args.push_back(constant_or_var(lx.next()));
    if (lx.at(Tok::Comma)) {
      lx.next();
      continue;
    }
    lx.expect(Tok::RParen, "')'");
    return args;
  }
}

Atom atom(Lexer& lx) {
  auto name = lx.expect(Tok::Ident, "a predicate");
  if (is_variable(name.text)) throw ParseError("predicate expected, got variable " + name.text, name.line, name.col);
  return Atom{name.text, arguments(lx)};
}

BuiltinOp op_of(const detail::Token& t) {
  static const std::pair<const char*, BuiltinOp> ops[] = {{"=", BuiltinOp::Eq},  {"!=", BuiltinOp::Neq},
                                                          {"<", BuiltinOp::Lt},  {">", BuiltinOp::Gt},
                                                          {"<=", BuiltinOp::Le}, {">=", BuiltinOp::Ge}};
  for (const auto& [s, op] : ops)
    if (t.text == s) return op;
  throw ParseError("unknown comparison " + t.text, t.line, t.col);
}

void body_literal(Lexer& lx, Rule& r) {
  if (lx.at_ident("not")) {
    lx.next();
    r.neg.push_back(atom(lx));
    return;
  }
  auto first = lx.next();
  if (first.kind == Tok::Ident && !is_variable(first.text) && !lx.at(Tok::Op)) {
    r.pos.push_back(Atom{first.text, arguments(lx)});
    return;
  }
  Term lhs = constant_or_var(first);
  if (!lx.at(Tok::Op)) lx.fail("expected a comparison");
  BuiltinOp op = op_of(lx.next());
  r.builtins.push_back(Builtin{op, lhs, constant_or_var(lx.next())});
}

bool at_disjunction(const Lexer& lx) { return lx.at(Tok::Pipe) || lx.at(Tok::Semi) || lx.at_ident("v"); }

} // namespace

Program parse_program(std::string_view text) {
  Lexer lx(text);
  Program p;
  while (!lx.at(Tok::End)) {
    Rule r;
    if (!lx.at(Tok::If)) {
      r.head.push_back(atom(lx));
      while (at_disjunction(lx)) {
        lx.next();
        r.head.push_back(atom(lx));
      }
    }
    if (lx.at(Tok::If)) {
      lx.next();
      body_literal(lx, r);
      while (lx.at(Tok::Comma)) {
        lx.next();
        body_literal(lx, r);
      }
    }
    lx.expect(Tok::Dot, "'.'");
    p.rules.push_back(std::move(r));
  }
  return p;
}

namespace {

GroundAtom ground_atom(Lexer& lx) {
  Atom a = atom(lx);
  GroundAtom g{a.predicate, {}};
  for (const auto& t : a.args) {
    if (t.is_var()) lx.fail("variable in answer set");
    g.args.push_back(t.constant());
  }
  return g;
}

StableModel atoms_of_line(std::string_view line, bool braces) {
  Lexer lx(line);
  StableModel m;
  if (braces) lx.expect(Tok::LBrace, "'{'");
  while (!lx.at(Tok::End) && !lx.at(Tok::RBrace)) {
    m.insert(ground_atom(lx));
    if (lx.at(Tok::Comma)) lx.next();
  }
  if (braces) lx.expect(Tok::RBrace, "'}'");
  return m;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

} // namespace

std::vector<StableModel> parse_answer_sets(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  std::vector<StableModel> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.rfind("Answer:", 0) == 0) {
      out.push_back(i + 1 < lines.size() ? atoms_of_line(trim(lines[++i]), false) : StableModel{});
    } else if (!line.empty() && line.front() == '{') {
      out.push_back(atoms_of_line(line, true));
    }
  }
  return out;
}

} // namespace secview::asp
