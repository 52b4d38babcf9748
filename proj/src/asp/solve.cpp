#include <secview/asp/solver.hpp>

#include <secview/error.hpp>
#include <secview/parser.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>

namespace secview::asp {

namespace {

constexpr std::int8_t kUnknown = -1;

// Is there a model of the clauses with at least one variable false? Literals
// are +-(var+1).
class SubsetSat {
public:
  SubsetSat(std::size_t n, std::vector<std::vector<int>> clauses) : n_(n), clauses_(std::move(clauses)) {}

  bool solve() {
    std::vector<std::int8_t> val(n_, kUnknown);
    return rec(val);
  }

private:
  static bool lit_true(const std::vector<std::int8_t>& v, int l) {
    auto x = v[static_cast<std::size_t>(std::abs(l) - 1)];
    return x != kUnknown && (x == 1) == (l > 0);
  }
  static bool lit_false(const std::vector<std::int8_t>& v, int l) {
    auto x = v[static_cast<std::size_t>(std::abs(l) - 1)];
    return x != kUnknown && (x == 1) != (l > 0);
  }

  bool propagate(std::vector<std::int8_t>& v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int unit = 0, open = 0;
        bool sat = false;
        for (int l : c) {
          if (lit_true(v, l)) { sat = true; break; }
          if (!lit_false(v, l)) { ++open; unit = l; }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          v[static_cast<std::size_t>(std::abs(unit) - 1)] = unit > 0 ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  bool rec(std::vector<std::int8_t>& v) const {
    if (!propagate(v)) return false;
    auto it = std::find(v.begin(), v.end(), kUnknown);
    if (it == v.end()) return true;
    for (std::int8_t choice : {std::int8_t{0}, std::int8_t{1}}) {
      auto w = v;
      w[static_cast<std::size_t>(it - v.begin())] = choice;
      if (rec(w)) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<int>> clauses_;
};

class Solver {
public:
  Solver(const GroundProgram& g, const SolveOptions& opts) : g_(g), opts_(opts), head_of_(g.atoms.size()) {
    for (std::size_t r = 0; r < g.rules.size(); ++r)
      for (auto a : g.rules[r].head) head_of_[a].push_back(r);
  }

  std::vector<StableModel> run() {
    std::vector<std::int8_t> val(g_.atoms.size(), kUnknown);
    search(val);
    std::sort(models_.begin(), models_.end());
    return models_;
  }

private:
  enum class Body { False, True, Open };

  Body body(const GroundRule& r, const std::vector<std::int8_t>& v) const {
    bool open = false;
    for (auto a : r.pos) {
      if (v[a] == 0) return Body::False;
      open |= v[a] == kUnknown;
    }
    for (auto a : r.neg) {
      if (v[a] == 1) return Body::False;
      open |= v[a] == kUnknown;
    }
    return open ? Body::Open : Body::True;
  }

  static bool set(std::vector<std::int8_t>& v, std::size_t a, std::int8_t x, bool& changed) {
    if (v[a] == x) return true;
    if (v[a] != kUnknown) return false;
    v[a] = x;
    changed = true;
    return true;
  }

  bool propagate(std::vector<std::int8_t>& v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : g_.rules) {
        Body b = body(r, v);
        if (b == Body::False) continue;
        std::size_t open = 0, last = 0;
        bool sat = false;
        for (auto h : r.head) {
          if (v[h] == 1) { sat = true; break; }
          if (v[h] == kUnknown) { ++open; last = h; }
        }
        if (sat) continue;
        if (b == Body::True) {
          if (open == 0) return false;
          if (open == 1 && !set(v, last, 1, changed)) return false;
        } else if (open == 0) {
          // Body must fail: if one literal is left open, falsify it.
          std::optional<std::pair<std::size_t, std::int8_t>> only;
          std::size_t n = 0;
          for (auto a : r.pos)
            if (v[a] == kUnknown) { ++n; only = {a, 0}; }
          for (auto a : r.neg)
            if (v[a] == kUnknown) { ++n; only = {a, 1}; }
          if (n == 1 && !set(v, only->first, only->second, changed)) return false;
        }
      }
      // Support: a true atom needs a rule with a possible body where it is the
      // only true head atom.
      for (std::size_t a = 0; a < v.size(); ++a) {
        if (v[a] == 0) continue;
        std::size_t count = 0, which = 0;
        for (auto r : head_of_[a]) {
          const auto& rule = g_.rules[r];
          if (body(rule, v) == Body::False) continue;
          if (std::any_of(rule.head.begin(), rule.head.end(), [&](std::size_t h) { return h != a && v[h] == 1; }))
            continue;
          ++count;
          which = r;
        }
        if (count == 0) {
          if (v[a] == 1) return false;
          v[a] = 0;
          changed = true;
        } else if (count == 1 && v[a] == 1) {
          const auto& rule = g_.rules[which];
          for (auto p : rule.pos)
            if (!set(v, p, 1, changed)) return false;
          for (auto n : rule.neg)
            if (!set(v, n, 0, changed)) return false;
          for (auto h : rule.head)
            if (h != a && !set(v, h, 0, changed)) return false;
        }
      }
    }
    return true;
  }

  std::optional<std::size_t> pick(const std::vector<std::int8_t>& v, bool& prefer_true) const {
    for (const auto& r : g_.rules) {
      if (body(r, v) != Body::True) continue;
      if (std::any_of(r.head.begin(), r.head.end(), [&](std::size_t h) { return v[h] == 1; })) continue;
      for (auto h : r.head)
        if (v[h] == kUnknown) {
          prefer_true = true;
          return h;
        }
    }
    for (std::size_t a = 0; a < v.size(); ++a)
      if (v[a] == kUnknown) {
        prefer_true = false;
        return a;
      }
    return std::nullopt;
  }

  void search(std::vector<std::int8_t>& v) {
    if (opts_.max_models && models_.size() >= opts_.max_models) return;
    if (!propagate(v)) return;
    bool prefer_true = false;
    auto a = pick(v, prefer_true);
    if (!a) {
      if (++candidates_ > opts_.max_candidates)
        throw BoundExceeded("stable model search exceeded " + std::to_string(opts_.max_candidates) + " candidates");
      if (is_stable(v)) {
        StableModel m;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] == 1) m.insert(g_.atoms[i]);
        models_.push_back(std::move(m));
      }
      return;
    }
    for (std::int8_t x : prefer_true ? std::vector<std::int8_t>{1, 0} : std::vector<std::int8_t>{0, 1}) {
      auto w = v;
      w[*a] = x;
      search(w);
    }
  }

  // v is a model; check it is a minimal model of its reduct.
  bool is_stable(const std::vector<std::int8_t>& v) const {
    std::vector<int> local(v.size(), -1);
    std::size_t n = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == 1) local[i] = static_cast<int>(n++);
    for (const auto& r : g_.rules)
      if (body(r, v) == Body::True && std::none_of(r.head.begin(), r.head.end(), [&](std::size_t h) { return v[h] == 1; }))
        return false;
    if (n == 0) return true;

    std::vector<std::vector<int>> clauses;
    for (const auto& r : g_.rules) {
      if (std::any_of(r.neg.begin(), r.neg.end(), [&](std::size_t a) { return v[a] == 1; })) continue;
      if (std::any_of(r.pos.begin(), r.pos.end(), [&](std::size_t a) { return v[a] != 1; })) continue;
      std::vector<int> c;
      for (auto a : r.pos) c.push_back(-(local[a] + 1));
      for (auto h : r.head)
        if (v[h] == 1) c.push_back(local[h] + 1);
      clauses.push_back(std::move(c));
    }
    std::vector<int> smaller;
    for (std::size_t i = 0; i < n; ++i) smaller.push_back(-static_cast<int>(i + 1));
    clauses.push_back(std::move(smaller));
    return !SubsetSat(n, std::move(clauses)).solve();
  }

  const GroundProgram& g_;
  SolveOptions opts_;
  std::vector<std::vector<std::size_t>> head_of_;
  std::vector<StableModel> models_;
  std::size_t candidates_ = 0;
};

// Perfect assignment of base tuples to s-rows (each s-row used at least once,
// each base tuple exactly once, s-row below the base tuple). Kuhn's algorithm
// for the covering part, then any compatible row for the rest.
std::optional<std::vector<std::size_t>> assign_rows(const std::vector<Tuple>& base, const std::vector<Row>& srows) {
  std::vector<std::vector<std::size_t>> adj(srows.size());
  for (std::size_t s = 0; s < srows.size(); ++s)
    for (std::size_t b = 0; b < base.size(); ++b)
      if (srows[s].size() == base[b].values.size() && tuple_leq(srows[s], base[b].values)) adj[s].push_back(b);
  std::vector<std::optional<std::size_t>> owner(base.size());
  auto augment = [&](auto&& self, std::size_t s, std::vector<char>& seen) -> bool {
    for (auto b : adj[s]) {
      if (seen[b]) continue;
      seen[b] = 1;
      if (!owner[b] || self(self, *owner[b], seen)) {
        owner[b] = s;
        return true;
      }
    }
    return false;
  };
  for (std::size_t s = 0; s < srows.size(); ++s) {
    std::vector<char> seen(base.size(), 0);
    if (!augment(augment, s, seen)) return std::nullopt;
  }
  std::vector<std::size_t> out(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) {
    if (owner[b]) {
      out[b] = *owner[b];
      continue;
    }
    // Prefer the most informative compatible row.
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < srows.size(); ++s)
      if (std::find(adj[s].begin(), adj[s].end(), b) != adj[s].end() && (!best || tuple_leq(srows[*best], srows[s])))
        best = s;
    if (!best) return std::nullopt;
    out[b] = *best;
  }
  return out;
}

} // namespace

std::vector<StableModel> stable_models(const GroundProgram& g, const SolveOptions& opts) {
  return Solver(g, opts).run();
}

std::vector<SecrecySolution> models_to_instances(const std::vector<StableModel>& models, const AnnotatedProgram& p,
                                                 const Instance& d) {
  std::vector<SecrecySolution> out;
  for (const auto& m : models) {
    std::map<std::string, std::vector<GroundAtom>> srows;
    for (const auto& a : m) {
      auto dec = p.decode(a.predicate);
      if (dec && dec->second == Annotation::S) srows[dec->first].push_back(a);
    }
    Instance inst(d.schema_ptr());
    for (const auto& rel : d.schema().relations()) {
      const auto& base = d.tuples(rel.name);
      const auto& atoms = srows[rel.name];
      if (p.options.tuple_ids) {
        std::map<TupleId, Row> by_tid;
        for (const auto& a : atoms) {
          if (a.args.empty() || !a.args[0].is_int())
            throw SemanticError("s-atom without tuple id: " + a.to_string());
          auto tid = static_cast<TupleId>(a.args[0].as_int());
          if (!d.find(rel.name, tid)) throw SemanticError("s-atom with unknown tuple id: " + a.to_string());
          if (!by_tid.emplace(tid, Row(a.args.begin() + 1, a.args.end())).second)
            throw SemanticError("several s-atoms for " + rel.name + " tuple " + std::to_string(tid));
        }
        for (const auto& t : base) {
          auto it = by_tid.find(t.tid);
          if (it == by_tid.end()) throw SemanticError("no s-atom for " + rel.name + " tuple " + std::to_string(t.tid));
          inst.add(rel.name, it->second, t.tid);
        }
      } else {
        std::vector<Row> rows;
        for (const auto& a : atoms) rows.push_back(a.args);
        auto asg = assign_rows(base, rows);
        if (!asg) throw SemanticError("s-atoms of " + rel.name + " cannot be traced to base tuples");
        for (std::size_t b = 0; b < base.size(); ++b) inst.add(rel.name, rows[(*asg)[b]], base[b].tid);
      }
    }
    ChangeSet cs = diff_changes(d, inst);
    out.push_back({std::move(cs), std::move(inst)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.changes < b.changes; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.changes == b.changes; }),
            out.end());
  return out;
}

AnswerSet cautious_answers(const std::vector<StableModel>& models) {
  if (models.empty()) throw InconsistencyError("program has no stable model");
  AnswerSet out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    AnswerSet a;
    for (const auto& at : models[i])
      if (at.predicate == answer_predicate()) a.rows.insert(at.args);
    out = i == 0 ? a : intersect(out, a);
  }
  return out;
}

AnswerSet cautious_answers(const Instance& d, const std::vector<ViewDef>& views, const Query& q,
                           const SolveOptions& opts, const CompileOptions& copts) {
  check_query(q, d.schema());
  AnnotatedProgram p = compile_program(d, views, copts);
  p.program.rules.push_back(compile_query_program(q, copts));
  return cautious_answers(stable_models(ground(p.program), opts));
}

} // namespace secview::asp
