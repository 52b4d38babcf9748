#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace secview {

// A domain constant: the single null, an integer, a symbol or a string.
class Value {
public:
  enum class Kind : std::uint8_t { Null, Int, Sym, Str };

  Value() = default; // null

  static Value null() { return Value{}; }
  static Value integer(std::int64_t v) { return Value{Rep{std::in_place_index<1>, v}}; }
  static Value symbol(std::string name) { return Value{Rep{std::in_place_index<2>, std::move(name)}}; }
  static Value string(std::string text) { return Value{Rep{std::in_place_index<3>, std::move(text)}}; }

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  bool is_null() const noexcept { return rep_.index() == 0; }
  bool is_int() const noexcept { return rep_.index() == 1; }

  std::int64_t as_int() const { return std::get<1>(rep_); }
  // Symbol name or string contents.
  const std::string& text() const { return rep_.index() == 2 ? std::get<2>(rep_) : std::get<3>(rep_); }

  // Syntactic identity; null equals only null.
  friend bool operator==(const Value&, const Value&) = default;
  // Total order used for canonical output only (null < ints < symbols < strings).
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  // Concrete syntax: null, 42, abc, "text".
  std::string to_string() const;

private:
  struct NullTag {
    friend bool operator==(NullTag, NullTag) { return true; }
  };
  using Rep = std::variant<NullTag, std::int64_t, std::string, std::string>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

using Row = std::vector<Value>;

std::string to_string(const Row& row);

// Column sort declared in a schema.
enum class Sort : std::uint8_t { Int, Sym, Str, Any };

const char* sort_name(Sort s) noexcept;
bool value_fits(const Value& v, Sort s) noexcept;

} // namespace secview

template <>
struct std::hash<secview::Value> {
  std::size_t operator()(const secview::Value& v) const noexcept;
};
