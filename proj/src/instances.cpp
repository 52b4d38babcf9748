#include <secview/instances.hpp>

#include "match.hpp"

#include <secview/analysis.hpp>
#include <secview/error.hpp>
#include <secview/eval.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>

namespace secview {

using detail::for_each_match;
using detail::Match;
using detail::term_value;
using detail::VarIndex;

bool tuple_leq(const Row& t1, const Row& t2) {
  if (t1.size() != t2.size())
    throw SemanticError("tuple length mismatch: " + std::to_string(t1.size()) + " vs " + std::to_string(t2.size()));
  for (std::size_t i = 0; i < t1.size(); ++i)
    if (!(t1[i] == t2[i] || t1[i].is_null())) return false;
  return true;
}

bool tuple_leq(const Tuple& t1, const Tuple& t2) { return tuple_leq(t1.values, t2.values); }

bool instance_leq_D(const Instance& base, const Instance& d1, const Instance& d2) {
  ChangeSet c1 = diff_changes(base, d1);
  ChangeSet c2 = diff_changes(base, d2);
  return std::includes(c2.begin(), c2.end(), c1.begin(), c1.end());
}

const char* mode_name(EnumerationMode m) noexcept { return m == EnumerationMode::Paper ? "paper" : "exhaustive"; }

std::set<Cell> candidate_cells(const Instance& d, const std::vector<ViewDef>& views, EnumerationMode mode) {
  std::set<Cell> out;
  if (mode == EnumerationMode::Exhaustive) {
    for (auto& c : d.non_null_cells()) out.insert(c);
    return out;
  }
  for (const auto& v : views) {
    AttrSets attrs = attr_sets(v);
    VarIndex vars(v.body);
    std::vector<std::size_t> comb, head;
    for (const auto& x : combination_vars(v)) comb.push_back(vars.at(x));
    for (const auto& x : v.head) head.push_back(vars.at(x));
    for_each_match(d, v.body, vars, [&](const Match& m) {
      // Only matches producing a non-null view row need breaking.
      for (auto s : comb)
        if (m.binding[s].is_null()) return;
      bool all_null = true;
      for (auto s : head) all_null = all_null && m.binding[s].is_null();
      if (all_null) return;
      for (const auto& b : v.phi) {
        const Value& l = term_value(b.lhs, vars, m.binding);
        const Value& r = is_unary(b.op) ? l : term_value(b.rhs, vars, m.binding);
        if (!holds_null_semantics(b.op, l, r)) return;
      }
      for (std::size_t i = 0; i < v.body.size(); ++i) {
        const Tuple& t = *m.tuples[i];
        for (std::size_t k = 0; k < t.values.size(); ++k) {
          if (t.values[k].is_null()) continue;
          if (attrs.srelevant.count({v.body[i].predicate, k + 1})) out.insert({v.body[i].predicate, t.tid, k + 1});
        }
      }
    });
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

ChangeSet to_changes(const std::vector<Cell>& cells, Mask m) {
  ChangeSet cs;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (m >> i & 1) cs.insert(cells[i]);
  return cs;
}

// Next mask with the same popcount.
Mask next_combination(Mask x) {
  Mask c = x & (~x + 1);
  Mask r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

std::vector<SecrecySolution> finish(const Instance& d, const std::vector<Cell>& cells, const std::vector<Mask>& kept) {
  std::vector<SecrecySolution> out;
  for (Mask m : kept) {
    ChangeSet cs = to_changes(cells, m);
    out.push_back({cs, apply_changes(d, cs)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.changes < b.changes; });
  return out;
}

} // namespace

std::vector<SecrecySolution> enumerate_secrecy_instances(const Instance& d, const std::vector<ViewDef>& views,
                                                         const EnumerationOptions& opts) {
  std::set<Cell> cand = candidate_cells(d, views, opts.mode);
  std::vector<Cell> cells(cand.begin(), cand.end());
  const std::size_t n = cells.size();
  if (n > opts.max_cells || n > 62)
    throw BoundExceeded(std::to_string(n) + " candidate cells exceed the bound of " + std::to_string(opts.max_cells));

  auto admissible = [&](Mask m) { return admissible_direct(apply_changes(d, to_changes(cells, m)), views); };

  std::vector<Mask> kept;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == 0) {
      if (admissible(0)) kept.push_back(0);
    } else {
      const Mask end = Mask{1} << n;
      for (Mask m = (Mask{1} << k) - 1; m < end; m = next_combination(m)) {
        bool covered = std::any_of(kept.begin(), kept.end(), [&](Mask s) { return (s & m) == s; });
        if (!covered && admissible(m)) kept.push_back(m);
      }
    }
    if (!kept.empty() && kept.front() == 0) break;
  }

  // Re-verify: admissible under both checks, and no strict subset admissible.
  for (Mask m : kept) {
    if (!is_admissible(apply_changes(d, to_changes(cells, m)), views))
      throw InconsistencyError("enumerated change set is not admissible");
    for (Mask s = (m - 1) & m;; s = (s - 1) & m) {
      if (s != m && admissible(s)) throw InconsistencyError("enumerated change set is not minimal");
      if (s == 0) break;
    }
  }
  return finish(d, cells, kept);
}

std::vector<SecrecySolution> oracle_secrecy_instances(const Instance& d, const std::vector<ViewDef>& views,
                                                      std::size_t max_cells) {
  std::vector<Cell> cells = d.non_null_cells();
  const std::size_t n = cells.size();
  if (n > max_cells || n > 24)
    throw BoundExceeded(std::to_string(n) + " non-null cells exceed the oracle bound of " + std::to_string(max_cells));
  const std::size_t total = std::size_t{1} << n;

  std::vector<char> adm(total), below(total);
  for (std::size_t m = 0; m < total; ++m) adm[m] = is_admissible(apply_changes(d, to_changes(cells, m)), views);
  // below[m]: some subset of m (m included) is admissible.
  for (std::size_t m = 0; m < total; ++m) below[m] = adm[m];
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t m = 0; m < total; ++m)
      if (m >> b & 1) below[m] = below[m] || below[m ^ (std::size_t{1} << b)];

  std::vector<Mask> kept;
  for (std::size_t m = 0; m < total; ++m) {
    if (!adm[m]) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < n && minimal; ++b)
      if (m >> b & 1) minimal = !below[m ^ (std::size_t{1} << b)];
    if (minimal) kept.push_back(m);
  }
  return finish(d, cells, kept);
}

} // namespace secview
