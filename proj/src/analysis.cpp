#include <secview/analysis.hpp>

#include "match.hpp"

#include <secview/error.hpp>
#include <secview/eval.hpp>

namespace secview {

using detail::for_each_match;
using detail::Match;
using detail::term_value;
using detail::VarIndex;

std::string to_string(const AttrPos& a) { return a.relation + "[" + std::to_string(a.pos) + "]"; }

std::string to_string(const std::set<AttrPos>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : s) {
    if (!first) out += ",";
    first = false;
    out += to_string(a);
  }
  return out + "}";
}

std::set<std::string> combination_vars(const ViewDef& v) { return relevant_vars(v.body, v.phi); }

AttrSets attr_sets(const ViewDef& v) {
  auto comb = combination_vars(v);
  std::set<std::string> head(v.head.begin(), v.head.end());
  AttrSets out;
  for (const auto& a : v.body) {
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!a.args[i].is_var()) continue;
      const auto& x = a.args[i].var_name();
      if (comb.count(x)) out.combination.insert({a.predicate, i + 1});
      if (head.count(x)) out.secrecy.insert({a.predicate, i + 1});
    }
  }
  out.srelevant = out.combination;
  out.srelevant.insert(out.secrecy.begin(), out.secrecy.end());
  return out;
}

HeadAtomSets head_atom_sets(const ViewDef& v, CpGranularity g) {
  auto comb = combination_vars(v);
  std::set<std::string> head(v.head.begin(), v.head.end());
  HeadAtomSets out;
  auto in = [](const std::set<std::string>& s, const Term& t) { return t.is_var() && s.count(t.var_name()) > 0; };

  for (std::size_t b = 0; b < v.body.size(); ++b) {
    const Atom& a = v.body[b];
    if (g == CpGranularity::PerAtom) {
      Atom n = a;
      bool any = false;
      for (auto& t : n.args)
        if (in(comb, t)) {
          t = Term(Value::null());
          any = true;
        }
      if (any) {
        out.cp.push_back(std::move(n));
        out.cp_body.push_back(b);
      }
    } else {
      for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!in(comb, a.args[k])) continue;
        Atom n = a;
        n.args[k] = Term(Value::null());
        out.cp.push_back(std::move(n));
        out.cp_body.push_back(b);
      }
    }
    Atom s = a;
    bool any = false;
    for (auto& t : s.args)
      if (in(head, t)) {
        t = Term(Value::null());
        any = true;
      }
    if (any) {
      out.sp.push_back(std::move(s));
      out.sp_body.push_back(b);
    }
  }
  return out;
}

bool is_null_view(const Instance& d, const ViewDef& v) {
  AnswerSet ans = eval_n(d, as_query(v));
  if (ans.empty()) return true;
  if (ans.size() > 1) return false;
  for (const auto& x : *ans.rows.begin())
    if (!x.is_null()) return false;
  return true;
}

bool admissible_direct(const Instance& d, const std::vector<ViewDef>& views) {
  for (const auto& v : views)
    if (!is_null_view(d, v)) return false;
  return true;
}

namespace {

bool sentence_holds(const Instance& d, const ViewDef& v) {
  VarIndex vars(v.body);
  std::vector<std::size_t> comb, head;
  for (const auto& x : combination_vars(v)) comb.push_back(vars.at(x));
  for (const auto& x : v.head) head.push_back(vars.at(x));
  bool ok = true;
  for_each_match(d, v.body, vars, [&](const Match& m) {
    if (!ok) return;
    for (auto s : comb)
      if (m.binding[s].is_null()) return;
    bool all_null = true;
    for (auto s : head) all_null = all_null && m.binding[s].is_null();
    if (all_null) return;
    for (const auto& b : v.phi) {
      const Value& l = term_value(b.lhs, vars, m.binding);
      const Value& r = is_unary(b.op) ? l : term_value(b.rhs, vars, m.binding);
      if (holds_classical(negate(b.op), l, r)) return;
    }
    ok = false;
  });
  return ok;
}

} // namespace

bool admissible_by_sentence(const Instance& d, const std::vector<ViewDef>& views) {
  for (const auto& v : views)
    if (!sentence_holds(d, v)) return false;
  return true;
}

bool is_admissible(const Instance& d, const std::vector<ViewDef>& views) {
  for (const auto& v : views) {
    bool direct = is_null_view(d, v);
    bool sentence = sentence_holds(d, v);
    if (direct != sentence) {
      throw InconsistencyError("admissibility checks disagree on view " + v.name + ": direct=" +
                               (direct ? "true" : "false") + " sentence=" + (sentence ? "true" : "false"));
    }
    if (!direct) return false;
  }
  return true;
}

std::string null_view_sentence(const ViewDef& v) {
  std::string out = "forall";
  for (const auto& x : body_variables(v.body)) out += " " + x;
  out += " (";
  for (std::size_t i = 0; i < v.body.size(); ++i) out += (i ? " & " : "") + v.body[i].to_string();
  out += " -> ";
  std::vector<std::string> disj;
  for (const auto& x : body_variables(v.body))
    if (combination_vars(v).count(x)) disj.push_back(x + " = null");
  if (!v.head.empty()) {
    std::string conj;
    std::set<std::string> seen;
    for (const auto& x : v.head) {
      if (!seen.insert(x).second) continue;
      conj += (conj.empty() ? "" : " & ") + x + " = null";
    }
    disj.push_back(seen.size() > 1 ? "(" + conj + ")" : conj);
  }
  for (const auto& b : v.phi) disj.push_back(Builtin{negate(b.op), b.lhs, b.rhs}.to_string());
  if (disj.empty()) disj.push_back("false");
  for (std::size_t i = 0; i < disj.size(); ++i) out += (i ? " | " : "") + disj[i];
  return out + ")";
}

} // namespace secview
