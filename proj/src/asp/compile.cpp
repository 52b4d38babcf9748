#include <secview/asp/program.hpp>

#include <secview/analysis.hpp>
#include <secview/error.hpp>
#include <secview/eval.hpp>
#include <secview/parser.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace secview::asp {

char annotation_letter(Annotation a) noexcept {
  switch (a) {
    case Annotation::T: return 't';
    case Annotation::U: return 'u';
    case Annotation::A: return 'a';
    case Annotation::S: return 's';
  }
  return '?';
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.var_name());
}

} // namespace

std::string atom_text(const Atom& a) { return a.args.empty() ? a.predicate : a.to_string(); }

std::string Rule::to_string() const { return to_string("|"); }

std::string Rule::to_string(const std::string& disjunction) const {
  std::vector<std::string> h, b;
  for (const auto& a : head) h.push_back(atom_text(a));
  for (const auto& a : pos) b.push_back(atom_text(a));
  for (const auto& a : neg) b.push_back("not " + atom_text(a));
  for (const auto& x : builtins) b.push_back(x.to_string());
  std::string out = join(h, (" " + disjunction + " ").c_str());
  if (!b.empty()) out += (h.empty() ? ":- " : " :- ") + join(b, ", ");
  return out + ".";
}

std::string Program::to_string() const {
  std::string out;
  for (const auto& r : rules) out += r.to_string() + "\n";
  return out;
}

void check_safety(const Rule& r) {
  std::set<std::string> bound;
  for (const auto& a : r.pos)
    for (const auto& t : a.args) collect_vars(t, bound);
  std::set<std::string> used;
  for (const auto& a : r.head)
    for (const auto& t : a.args) collect_vars(t, used);
  for (const auto& a : r.neg)
    for (const auto& t : a.args) collect_vars(t, used);
  for (const auto& b : r.builtins) {
    collect_vars(b.lhs, used);
    if (!is_unary(b.op)) collect_vars(b.rhs, used);
  }
  for (const auto& v : used)
    if (!bound.count(v)) throw SemanticError("unsafe variable " + v + " in rule " + r.to_string());
}

std::string base_predicate(const std::string& relation) { return lower(relation); }

std::string annotated_predicate(const std::string& relation, Annotation a) {
  return lower(relation) + "_" + annotation_letter(a);
}

std::string aux_predicate(const std::string& view) { return "aux_" + lower(view); }

std::optional<std::pair<std::string, Annotation>> AnnotatedProgram::decode(const std::string& predicate) const {
  for (const auto& rel : schema->relations())
    for (Annotation a : {Annotation::T, Annotation::U, Annotation::A, Annotation::S})
      if (annotated_predicate(rel.name, a) == predicate) return std::pair{rel.name, a};
  return std::nullopt;
}

std::optional<std::string> AnnotatedProgram::decode_base(const std::string& predicate) const {
  for (const auto& rel : schema->relations())
    if (base_predicate(rel.name) == predicate) return rel.name;
  return std::nullopt;
}

namespace {

// Body-to-program translation for one view.
class ViewCompiler {
public:
  ViewCompiler(const ViewDef& v, bool tids) : v_(v), tids_(tids) {
    std::set<std::string> taken;
    for (const auto& a : v.body)
      for (const auto& t : a.args)
        if (t.is_var()) taken.insert(t.var_name());
    for (std::size_t i = 0; i < v.body.size(); ++i) {
      std::string name = "I" + std::to_string(i + 1);
      while (taken.count(name)) name = "I_" + name;
      taken.insert(name);
      tid_vars_.push_back(name);
    }
    for (auto& b : v.phi) phi_.push_back(program_builtin(b));
    comb_ = combination_vars(v);
    for (const auto& x : v.head)
      if (std::find(head_.begin(), head_.end(), x) == head_.end()) head_.push_back(x);
  }

  static Builtin program_builtin(const Builtin& b) {
    if (b.op == BuiltinOp::IsNull) return {BuiltinOp::Eq, b.lhs, Term(Value::null())};
    if (b.op == BuiltinOp::IsNotNull) return {BuiltinOp::Neq, b.lhs, Term(Value::null())};
    return b;
  }

  // Body atom i (possibly with nulls substituted) as an annotated atom.
  Atom annotated(const Atom& a, std::size_t i, Annotation ann) const {
    Atom out{annotated_predicate(a.predicate, ann), {}};
    if (tids_) out.args.push_back(Term::var(tid_vars_[i]));
    out.args.insert(out.args.end(), a.args.begin(), a.args.end());
    return out;
  }

  Atom aux() const {
    Atom out{aux_predicate(v_.name), {}};
    for (const auto& x : head_) out.args.push_back(Term::var(x));
    return out;
  }

  static Builtin not_null(const std::string& x) { return {BuiltinOp::Neq, Term::var(x), Term(Value::null())}; }

  // T-annotated body atoms and phi.
  Rule body_rule() const {
    Rule r;
    for (std::size_t i = 0; i < v_.body.size(); ++i) r.pos.push_back(annotated(v_.body[i], i, Annotation::T));
    r.builtins = phi_;
    return r;
  }

  void add_comb_guards(Rule& r) const {
    for (const auto& x : body_variables(v_.body))
      if (comb_.count(x)) r.builtins.push_back(not_null(x));
  }

  void emit(std::vector<Rule>& out) const {
    HeadAtomSets hs = head_atom_sets(v_, CpGranularity::PerPosition);
    // Overlap is taken on variables. Positions can overlap through a self-join
    // with no head variable being a combination variable, and the CP-only head
    // then misses the secrecy-position updates.
    bool overlap = std::any_of(head_.begin(), head_.end(), [&](const std::string& x) { return comb_.count(x) > 0; });

    std::vector<Atom> cp_heads;
    for (std::size_t c = 0; c < hs.cp.size(); ++c) cp_heads.push_back(annotated(hs.cp[c], hs.cp_body[c], Annotation::A));

    // 2. secrecy rules
    if (overlap) {
      Rule r = body_rule();
      add_comb_guards(r);
      r.head = cp_heads;
      if (!r.head.empty()) out.push_back(std::move(r));
    } else {
      for (std::size_t d = 0; d < hs.sp.size(); ++d) {
        Rule r = body_rule();
        add_comb_guards(r);
        r.pos.push_back(aux());
        r.head.push_back(annotated(hs.sp[d], hs.sp_body[d], Annotation::A));
        r.head.insert(r.head.end(), cp_heads.begin(), cp_heads.end());
        out.push_back(std::move(r));
      }
    }
    for (const auto& x : head_) {
      Rule r = body_rule();
      r.builtins.push_back(not_null(x));
      r.head.push_back(aux());
      out.push_back(std::move(r));
    }

    // 3. old tuple collection; one rule per secrecy variable of the atom
    for (std::size_t j = 0; j < hs.sp.size(); ++j) {
      std::size_t b = hs.sp_body[j];
      std::vector<std::string> svars;
      for (const auto& t : v_.body[b].args)
        if (t.is_var() && std::find(head_.begin(), head_.end(), t.var_name()) != head_.end() &&
            std::find(svars.begin(), svars.end(), t.var_name()) == svars.end())
          svars.push_back(t.var_name());
      for (const auto& x : svars) {
        Rule r = body_rule();
        r.pos.push_back(aux());
        add_comb_guards(r);
        r.pos.push_back(annotated(hs.sp[j], b, Annotation::A));
        if (!comb_.count(x)) r.builtins.push_back(not_null(x));
        r.head.push_back(annotated(v_.body[b], b, Annotation::U));
        out.push_back(std::move(r));
      }
    }
    for (std::size_t c = 0; c < hs.cp.size(); ++c) {
      std::size_t b = hs.cp_body[c];
      Rule r = body_rule();
      r.pos.push_back(aux());
      add_comb_guards(r);
      r.pos.push_back(cp_heads[c]);
      r.head.push_back(annotated(v_.body[b], b, Annotation::U));
      out.push_back(std::move(r));
    }
  }

private:
  const ViewDef& v_;
  bool tids_;
  std::vector<std::string> tid_vars_;
  std::vector<Builtin> phi_;
  std::set<std::string> comb_;
  std::vector<std::string> head_;
};

Atom generic_atom(const std::string& pred, std::size_t arity, bool tids) {
  Atom a{pred, {}};
  if (tids) a.args.push_back(Term::var("I"));
  for (std::size_t k = 0; k < arity; ++k) a.args.push_back(Term::var("X" + std::to_string(k + 1)));
  return a;
}

void check_names(const Schema& schema, const std::vector<ViewDef>& views) {
  std::map<std::string, std::string> seen;
  auto claim = [&](const std::string& pred, const std::string& owner) {
    auto [it, fresh] = seen.emplace(pred, owner);
    if (!fresh && it->second != owner)
      throw SemanticError("program predicate " + pred + " is produced by both " + it->second + " and " + owner);
  };
  for (const auto& rel : schema.relations()) {
    claim(base_predicate(rel.name), rel.name);
    for (Annotation a : {Annotation::T, Annotation::U, Annotation::A, Annotation::S})
      claim(annotated_predicate(rel.name, a), rel.name);
  }
  for (const auto& v : views) claim(aux_predicate(v.name), v.name);
  claim(answer_predicate(), "the query");
}

} // namespace

AnnotatedProgram compile_program(const Instance& d, const std::vector<ViewDef>& views, const CompileOptions& opts) {
  for (const auto& v : views) check_view(v, d.schema());
  check_names(d.schema(), views);

  AnnotatedProgram out;
  out.schema = d.schema_ptr();
  out.views = views;
  out.options = opts;
  auto& rules = out.program.rules;

  // 1. facts
  for (const auto& rel : d.schema().relations()) {
    for (const auto& t : d.tuples(rel.name)) {
      Atom a{base_predicate(rel.name), {}};
      if (opts.tuple_ids) a.args.push_back(Term(Value::integer(t.tid)));
      for (const auto& v : t.values) a.args.push_back(Term(v));
      rules.push_back(Rule{{std::move(a)}, {}, {}, {}});
    }
  }
  // 2. and 3.
  for (const auto& v : views) ViewCompiler(v, opts.tuple_ids).emit(rules);
  // 4. and 5.
  for (const auto& rel : d.schema().relations()) {
    auto g = [&](Annotation a) { return generic_atom(annotated_predicate(rel.name, a), rel.arity(), opts.tuple_ids); };
    rules.push_back(Rule{{g(Annotation::T)}, {generic_atom(base_predicate(rel.name), rel.arity(), opts.tuple_ids)}, {}, {}});
    rules.push_back(Rule{{g(Annotation::T)}, {g(Annotation::A)}, {}, {}});
  }
  for (const auto& rel : d.schema().relations()) {
    auto g = [&](Annotation a) { return generic_atom(annotated_predicate(rel.name, a), rel.arity(), opts.tuple_ids); };
    rules.push_back(Rule{{g(Annotation::S)}, {g(Annotation::T)}, {g(Annotation::U)}, {}});
  }
  for (const auto& r : rules) check_safety(r);
  return out;
}

Rule compile_query_program(const Query& q, const CompileOptions& opts) {
  Query rw = rewrite_query(q);
  std::set<std::string> taken;
  for (const auto& a : rw.body)
    for (const auto& t : a.args)
      if (t.is_var()) taken.insert(t.var_name());
  Rule r;
  for (std::size_t i = 0; i < rw.body.size(); ++i) {
    Atom a{annotated_predicate(rw.body[i].predicate, Annotation::S), {}};
    if (opts.tuple_ids) {
      std::string name = "I" + std::to_string(i + 1);
      while (taken.count(name)) name = "I_" + name;
      taken.insert(name);
      a.args.push_back(Term::var(name));
    }
    a.args.insert(a.args.end(), rw.body[i].args.begin(), rw.body[i].args.end());
    r.pos.push_back(std::move(a));
  }
  r.builtins = rw.builtins;
  Atom head{answer_predicate(), {}};
  for (const auto& x : rw.free_vars) head.args.push_back(Term::var(x));
  r.head.push_back(std::move(head));
  check_safety(r);
  return r;
}

std::vector<DenialConstraint> to_denial_constraints(const ViewDef& v) {
  std::vector<std::string> head;
  for (const auto& x : v.head)
    if (std::find(head.begin(), head.end(), x) == head.end()) head.push_back(x);
  std::vector<std::string> vars = body_variables(v.body);

  std::vector<DenialConstraint> out;
  for (const auto& x : head) {
    DenialConstraint dc;
    dc.variable = x;
    for (const auto& a : v.body) {
      Atom b = a;
      b.predicate = base_predicate(a.predicate);
      dc.rule.pos.push_back(std::move(b));
    }
    for (const auto& b : v.phi) dc.rule.builtins.push_back(ViewCompiler::program_builtin(b));
    dc.rule.builtins.push_back({BuiltinOp::Neq, Term::var(x), Term(Value::null())});

    std::vector<std::string> conj;
    for (const auto& a : v.body) conj.push_back(a.to_string());
    for (const auto& b : v.phi) conj.push_back(b.to_string());
    conj.push_back(x + " ≠ null");
    dc.text = "¬∃" + join(vars, ",") + " (" + join(conj, " ∧ ") + ")";
    out.push_back(std::move(dc));
  }
  return out;
}

} // namespace secview::asp
