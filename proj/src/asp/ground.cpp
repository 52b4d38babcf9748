#include <secview/asp/solver.hpp>

#include <secview/error.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace secview::asp {

std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

std::string GroundAtom::to_string() const {
  std::string out = predicate;
  if (args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i].to_string();
  return out + ")";
}

std::size_t GroundProgram::id(const GroundAtom& a) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
  if (it == atoms.end() || *it != a) throw std::out_of_range("atom not in ground program: " + a.to_string());
  return static_cast<std::size_t>(it - atoms.begin());
}

std::string GroundProgram::to_string() const {
  std::string out;
  auto list = [&](const std::vector<std::size_t>& ids, const char* sep, const char* prefix) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? sep : "") + std::string(prefix) + atoms[ids[i]].to_string();
    return s;
  };
  for (const auto& r : rules) {
    out += list(r.head, " | ", "");
    if (!r.pos.empty() || !r.neg.empty()) {
      out += " :- " + list(r.pos, ", ", "");
      if (!r.pos.empty() && !r.neg.empty()) out += ", ";
      out += list(r.neg, ", ", "not ");
    }
    out += ".\n";
  }
  return out;
}

namespace {

// Built-ins in programs: null is an ordinary constant for = and !=, order
// comparisons with null fail, other constants use the term order.
bool builtin_holds(BuiltinOp op, const Value& a, const Value& b) {
  switch (op) {
    case BuiltinOp::IsNull: return a.is_null();
    case BuiltinOp::IsNotNull: return !a.is_null();
    case BuiltinOp::Eq: return a == b;
    case BuiltinOp::Neq: return a != b;
    default: break;
  }
  if (a.is_null() || b.is_null()) return false;
  auto c = a <=> b;
  switch (op) {
    case BuiltinOp::Lt: return c < 0;
    case BuiltinOp::Gt: return c > 0;
    case BuiltinOp::Le: return c <= 0;
    case BuiltinOp::Ge: return c >= 0;
    default: return false;
  }
}

using Binding = std::map<std::string, Value>;

const Value& value_of(const Term& t, const Binding& b) {
  if (!t.is_var()) return t.constant();
  return b.at(t.var_name());
}

GroundAtom instantiate(const Atom& a, const Binding& b) {
  GroundAtom g{a.predicate, {}};
  for (const auto& t : a.args) g.args.push_back(value_of(t, b));
  return g;
}

class AtomBase {
public:
  bool insert(const GroundAtom& a) {
    if (!known_.insert(a).second) return false;
    by_pred_[a.predicate].push_back(a.args);
    return true;
  }
  bool contains(const GroundAtom& a) const { return known_.count(a) > 0; }
  const std::vector<std::vector<Value>>& rows(const std::string& pred) const {
    static const std::vector<std::vector<Value>> none;
    auto it = by_pred_.find(pred);
    return it == by_pred_.end() ? none : it->second;
  }
  const std::set<GroundAtom>& all() const { return known_; }

private:
  std::set<GroundAtom> known_;
  std::unordered_map<std::string, std::vector<std::vector<Value>>> by_pred_;
};

// Calls fn(binding) for each match of the positive body in `base` that
// satisfies the built-ins.
template <class Fn>
void for_each_instance(const Rule& r, const AtomBase& base, Fn&& fn) {
  Binding b;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == r.pos.size()) {
      for (const auto& x : r.builtins) {
        const Value& l = value_of(x.lhs, b);
        if (!builtin_holds(x.op, l, is_unary(x.op) ? l : value_of(x.rhs, b))) return;
      }
      fn(static_cast<const Binding&>(b));
      return;
    }
    const Atom& a = r.pos[i];
    // Copy: fn may grow the base while we iterate.
    const auto rows = base.rows(a.predicate);
    for (const auto& row : rows) {
      if (row.size() != a.args.size()) continue;
      std::vector<std::string> added;
      bool ok = true;
      for (std::size_t k = 0; k < row.size() && ok; ++k) {
        const Term& t = a.args[k];
        if (!t.is_var()) {
          ok = t.constant() == row[k];
        } else if (auto it = b.find(t.var_name()); it != b.end()) {
          ok = it->second == row[k];
        } else {
          b.emplace(t.var_name(), row[k]);
          added.push_back(t.var_name());
        }
      }
      if (ok) self(self, i + 1);
      for (const auto& v : added) b.erase(v);
    }
  };
  rec(rec, 0);
}

} // namespace

GroundProgram ground(const Program& p) {
  for (const auto& r : p.rules) check_safety(r);

  AtomBase base;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : p.rules)
      for_each_instance(r, base, [&](const Binding& b) {
        for (const auto& h : r.head) changed |= base.insert(instantiate(h, b));
      });
  }

  GroundProgram g;
  g.atoms.assign(base.all().begin(), base.all().end());
  std::set<std::tuple<std::vector<std::size_t>, std::vector<std::size_t>, std::vector<std::size_t>>> seen;
  for (const auto& r : p.rules) {
    for_each_instance(r, base, [&](const Binding& b) {
      GroundRule gr;
      for (const auto& h : r.head) gr.head.push_back(g.id(instantiate(h, b)));
      for (const auto& a : r.pos) gr.pos.push_back(g.id(instantiate(a, b)));
      for (const auto& a : r.neg) {
        GroundAtom n = instantiate(a, b);
        if (base.contains(n)) gr.neg.push_back(g.id(n));
      }
      for (auto* v : {&gr.head, &gr.pos, &gr.neg}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
      }
      if (seen.emplace(gr.head, gr.pos, gr.neg).second) g.rules.push_back(std::move(gr));
    });
  }
  return g;
}

} // namespace secview::asp
