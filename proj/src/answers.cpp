#include <secview/answers.hpp>

#include <secview/error.hpp>

#include <algorithm>

namespace secview {

SecretAnswerReport secret_answers(const std::vector<SecrecySolution>& sis, const Query& q) {
  if (sis.empty()) throw InconsistencyError("no secrecy instances");
  SecretAnswerReport rep;
  rep.query = q;
  for (std::size_t i = 0; i < sis.size(); ++i) {
    AnswerSet a = eval_n(sis[i].instance, q);
    rep.answers = i == 0 ? a : intersect(rep.answers, a);
    rep.per_instance.emplace_back(sis[i].changes, std::move(a));
  }
  return rep;
}

SecretAnswerReport secret_answers(const Instance& d, const std::vector<ViewDef>& views, const Query& q,
                                  const EnumerationOptions& opts) {
  return secret_answers(enumerate_secrecy_instances(d, views, opts), q);
}

Instance secrecy_answer_instance(const Instance& d, const std::vector<SecrecySolution>& sis) {
  Instance out(d.schema_ptr());
  for (const auto& rel : d.schema().relations()) {
    Query q;
    Atom a{rel.name, {}};
    for (std::size_t i = 0; i < rel.arity(); ++i) {
      std::string x = "X" + std::to_string(i + 1);
      q.free_vars.push_back(x);
      a.args.push_back(Term::var(x));
    }
    q.body.push_back(std::move(a));
    for (const auto& row : secret_answers(sis, q).answers.rows) out.add(rel.name, row);
  }
  return out;
}

Instance secrecy_answer_instance(const Instance& d, const std::vector<ViewDef>& views, const EnumerationOptions& opts) {
  return secrecy_answer_instance(d, enumerate_secrecy_instances(d, views, opts));
}

namespace {

AnswerSet drop_null_rows(const AnswerSet& a) {
  AnswerSet out;
  for (const auto& r : a.rows)
    if (!std::all_of(r.begin(), r.end(), [](const Value& v) { return v.is_null(); })) out.rows.insert(r);
  return out;
}

} // namespace

LeakageReport check_no_leakage(const Instance& d, const std::vector<ViewDef>& views, const EnumerationOptions& opts) {
  auto sis = enumerate_secrecy_instances(d, views, opts);
  Instance da = secrecy_answer_instance(d, sis);
  LeakageReport rep;
  for (const auto& v : views) {
    Query q = as_query(v);
    AnswerSet sa = secret_answers(sis, q).answers;
    AnswerSet on = eval_n(da, q);
    if (drop_null_rows(sa) != drop_null_rows(on)) rep.ok_without_null_rows = false;
    if (sa != on && rep.ok) {
      rep.ok = false;
      rep.view = v.name;
      rep.secret = std::move(sa);
      rep.on_answer_instance = std::move(on);
    }
  }
  return rep;
}

} // namespace secview
