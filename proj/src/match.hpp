#pragma once

#include <secview/error.hpp>
#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace secview::detail {

// Variables of a conjunctive body mapped to dense slots.
class VarIndex {
public:
  explicit VarIndex(const std::vector<Atom>& body) {
    for (const auto& a : body)
      for (const auto& t : a.args)
        if (t.is_var()) slot(t.var_name());
  }

  std::size_t slot(const std::string& name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return static_cast<std::size_t>(it - names_.begin());
    names_.push_back(name);
    return names_.size() - 1;
  }
  std::optional<std::size_t> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }
  std::size_t at(const std::string& name) const {
    if (auto s = find(name)) return *s;
    throw SemanticError("unsafe variable " + name);
  }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

private:
  std::vector<std::string> names_;
};

// A full assignment of body variables plus the tuple matched by each atom.
struct Match {
  std::vector<Value> binding;
  std::vector<const Tuple*> tuples;
};

// Enumerates every way of matching the database atoms against `d`, with
// syntactic equality (null matches only null). Calls `fn(const Match&)`.
template <class Fn>
void for_each_match(const Instance& d, const std::vector<Atom>& body, const VarIndex& vars, Fn&& fn) {
  Match m;
  m.binding.assign(vars.size(), Value{});
  m.tuples.assign(body.size(), nullptr);
  std::vector<char> bound(vars.size(), 0);
  std::vector<std::vector<std::size_t>> slots(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    d.schema().at(body[i].predicate);
    for (const auto& t : body[i].args) slots[i].push_back(t.is_var() ? vars.at(t.var_name()) : SIZE_MAX);
  }

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == body.size()) {
      fn(static_cast<const Match&>(m));
      return;
    }
    const Atom& a = body[i];
    for (const Tuple& t : d.tuples(a.predicate)) {
      if (t.values.size() != a.args.size()) continue;
      std::vector<std::size_t> newly;
      bool ok = true;
      for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
        std::size_t s = slots[i][k];
        if (s == SIZE_MAX) {
          ok = a.args[k].constant() == t.values[k];
        } else if (bound[s]) {
          ok = m.binding[s] == t.values[k];
        } else {
          bound[s] = 1;
          m.binding[s] = t.values[k];
          newly.push_back(s);
        }
      }
      if (ok) {
        m.tuples[i] = &t;
        self(self, i + 1);
      }
      for (auto s : newly) bound[s] = 0;
    }
  };
  rec(rec, 0);
}

inline const Value& term_value(const Term& t, const VarIndex& vars, const std::vector<Value>& binding) {
  return t.is_var() ? binding[vars.at(t.var_name())] : t.constant();
}

} // namespace secview::detail
