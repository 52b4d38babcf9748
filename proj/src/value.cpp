#include <secview/value.hpp>

#include <ostream>

namespace secview {

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.rep_.index() <=> b.rep_.index(); c != 0) return c;
  switch (a.kind()) {
    case Value::Kind::Null: return std::strong_ordering::equal;
    case Value::Kind::Int: return a.as_int() <=> b.as_int();
    default: return a.text().compare(b.text()) <=> 0;
  }
}

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Null: return "null";
    case Kind::Int: return std::to_string(as_int());
    case Kind::Sym: return text();
    case Kind::Str: {
      std::string out = "\"";
      for (char c : text()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

std::string to_string(const Row& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ",";
    out += row[i].to_string();
  }
  return out + ")";
}

const char* sort_name(Sort s) noexcept {
  switch (s) {
    case Sort::Int: return "int";
    case Sort::Sym: return "sym";
    case Sort::Str: return "str";
    case Sort::Any: return "any";
  }
  return "?";
}

bool value_fits(const Value& v, Sort s) noexcept {
  switch (v.kind()) {
    case Value::Kind::Null: return true;
    case Value::Kind::Int: return s == Sort::Int || s == Sort::Any;
    case Value::Kind::Sym: return s == Sort::Sym || s == Sort::Any;
    case Value::Kind::Str: return s == Sort::Str || s == Sort::Any;
  }
  return false;
}

} // namespace secview

std::size_t std::hash<secview::Value>::operator()(const secview::Value& v) const noexcept {
  using K = secview::Value::Kind;
  switch (v.kind()) {
    case K::Null: return 0x9e3779b9u;
    case K::Int: return std::hash<std::int64_t>{}(v.as_int());
    case K::Sym: return std::hash<std::string>{}(v.text()) ^ 0x51u;
    case K::Str: return std::hash<std::string>{}(v.text()) ^ 0xa7u;
  }
  return 0;
}
