#include "fixtures.hpp"
#include "random_corpus.hpp"

#include <secview/analysis.hpp>
#include <secview/error.hpp>
#include <secview/eval.hpp>
#include <secview/parser.hpp>

#include <gtest/gtest.h>

using namespace secview;
using namespace fixtures;

namespace {

std::set<AttrPos> pos(std::initializer_list<AttrPos> ps) { return ps; }

std::vector<std::string> strs(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.to_string());
  return out;
}

struct PR : ::testing::Test {
  std::shared_ptr<const Schema> s = schema(read_data("pr.schema"));
  std::vector<ViewDef> views = parse_views(read_data("pr.views"), *s);
  Instance facts(const char* text) { return parse_facts(text, s); }
};

} // namespace

TEST(AttrSets, ThreeWayView) {
  auto s = schema(read_data("d2.schema"));
  auto v = parse_views(read_data("d2.views"), *s)[0];
  AttrSets a = attr_sets(v);
  EXPECT_EQ(a.combination, pos({{"R", 2}, {"S", 1}}));
  EXPECT_EQ(a.secrecy, pos({{"R", 1}}));
  EXPECT_EQ(a.srelevant, pos({{"R", 1}, {"R", 2}, {"S", 1}}));
}

TEST(AttrSets, JoinView) {
  auto v = parse_view_unchecked("Vs(X, Z) :- P(X, Y), R(Y, Z), Y < 3.");
  AttrSets a = attr_sets(v);
  EXPECT_EQ(a.combination, pos({{"P", 2}, {"R", 1}}));
  EXPECT_EQ(a.secrecy, pos({{"P", 1}, {"R", 2}}));
}

TEST(AttrSets, NoJoin) {
  AttrSets a = attr_sets(parse_view_unchecked("Vs(X) :- P(X, Y)."));
  EXPECT_TRUE(a.combination.empty());
  EXPECT_EQ(a.secrecy, pos({{"P", 1}}));
}

TEST(AttrSets, OverlapAndConstants) {
  AttrSets a = attr_sets(parse_view_unchecked("Vs(X) :- P(X, 2), R(X), X < 5."));
  EXPECT_EQ(a.combination, pos({{"P", 1}, {"R", 1}}));
  EXPECT_EQ(a.secrecy, pos({{"P", 1}, {"R", 1}}));
}

TEST(HeadAtoms, ThreeAtomDisplay) {
  auto h = head_atom_sets(parse_view_unchecked("Vs(X, Z, W) :- P(X, Y), Q(Y, Z, W)."));
  EXPECT_EQ(strs(h.cp), (std::vector<std::string>{"P(X,null)", "Q(null,Z,W)"}));
  EXPECT_EQ(strs(h.sp), (std::vector<std::string>{"P(null,Y)", "Q(Y,null,null)"}));
  EXPECT_EQ(h.sp_body, (std::vector<std::size_t>{0, 1}));
}

TEST(HeadAtoms, JoinView) {
  auto h = head_atom_sets(parse_view_unchecked("Vs(X, Z) :- P(X, Y), R(Y, Z), Y < 3."));
  EXPECT_EQ(strs(h.cp), (std::vector<std::string>{"P(X,null)", "R(null,Z)"}));
  EXPECT_EQ(strs(h.sp), (std::vector<std::string>{"P(null,Y)", "R(Y,null)"}));
}

TEST(HeadAtoms, NoJoinAndPerPosition) {
  auto h = head_atom_sets(parse_view_unchecked("Vs(X) :- P(X, Y)."));
  EXPECT_TRUE(h.cp.empty());
  EXPECT_EQ(strs(h.sp), (std::vector<std::string>{"P(null,Y)"}));

  auto v = parse_view_unchecked("Vs(Z) :- P(Y, Y, W), R(W, Z).");
  EXPECT_EQ(strs(head_atom_sets(v).cp), (std::vector<std::string>{"P(null,null,null)", "R(null,Z)"}));
  auto pp = head_atom_sets(v, CpGranularity::PerPosition);
  EXPECT_EQ(strs(pp.cp), (std::vector<std::string>{"P(null,Y,W)", "P(Y,null,W)", "P(Y,Y,null)", "R(null,Z)"}));
  EXPECT_EQ(pp.cp_body, (std::vector<std::size_t>{0, 0, 0, 1}));
}

TEST(NullView, Goldens) {
  auto s = schema(read_data("d2.schema"));
  auto d = parse_facts(read_data("d2.facts"), s);
  auto v = parse_views(read_data("d2.views"), *s);
  EXPECT_TRUE(is_null_view(d, v[0]));
  EXPECT_TRUE(is_admissible(d, v));
  EXPECT_TRUE(is_null_view(Instance(s), v[0]));

  auto ms = schema(read_data("marks.schema"));
  auto md = parse_facts(read_data("marks.facts"), ms);
  auto mv = parse_views(read_data("marks.views"), *ms);
  EXPECT_FALSE(is_null_view(md, mv[0]));
  EXPECT_FALSE(is_admissible(md, mv));
}

TEST_F(PR, BaseInadmissibleDegradationsAdmissible) {
  EXPECT_FALSE(is_admissible(facts("P(1,2). R(2,1)."), views));
  EXPECT_TRUE(is_admissible(facts("P(null,2). R(2,null)."), views));
  EXPECT_TRUE(is_admissible(facts("P(1,null). R(2,1)."), views));
  EXPECT_TRUE(is_admissible(facts("P(1,2). R(null,1)."), views));
  EXPECT_TRUE(is_admissible(facts("P(1,null). R(null,1)."), views));
}

TEST_F(PR, SentenceText) {
  EXPECT_EQ(null_view_sentence(views[0]),
            "forall X Y Z (P(X,Y) & R(Y,Z) -> Y = null | (X = null & Z = null) | Y >= 3)");
}

TEST(Admissible, BooleanViewAlwaysNull) {
  auto s = schema("relation P(a:int).");
  auto d = parse_facts("P(1).", s);
  EXPECT_TRUE(is_admissible(d, {parse_view("V() :- P(X).", *s)}));
}

// Direct evaluation and the classical sentence agree on random inputs.
TEST(Property, DirectMatchesSentence) {
  corpus::Generator g(31337);
  int inadmissible = 0;
  for (int i = 0; i < 1000; ++i) {
    auto c = g.secrecy_case();
    bool direct = admissible_direct(c.instance, c.views);
    ASSERT_EQ(direct, admissible_by_sentence(c.instance, c.views)) << c.instance.to_string();
    inadmissible += !direct;
  }
  EXPECT_GT(inadmissible, 100);
}

// Combination positions are always occupied by relevant variables.
TEST(Property, CombinationPositionsHoldRelevantVariables) {
  corpus::Generator g(5);
  for (int i = 0; i < 300; ++i) {
    auto s = g.schema();
    ViewDef v = g.view(*s, "V");
    auto rel = relevant_vars(as_query(v));
    AttrSets a = attr_sets(v);
    for (const auto& p : a.combination) {
      bool found = false;
      for (const auto& atom : v.body)
        if (atom.predicate == p.relation && atom.args[p.pos - 1].is_var() && rel.count(atom.args[p.pos - 1].var_name()))
          found = true;
      EXPECT_TRUE(found) << v.to_string();
    }
  }
}

// Nulling every s-relevant cell of every body match gives an admissible instance.
TEST(Property, SaturationIsAdmissible) {
  corpus::Generator g(99);
  for (int i = 0; i < 500; ++i) {
    auto c = g.secrecy_case();
    ChangeSet cs;
    for (const auto& v : c.views) {
      AttrSets a = attr_sets(v);
      for (const auto& p : a.srelevant)
        for (const auto& t : c.instance.tuples(p.relation))
          if (!t.values[p.pos - 1].is_null()) cs.insert({p.relation, t.tid, p.pos});
    }
    EXPECT_TRUE(is_admissible(apply_changes(c.instance, cs), c.views)) << c.instance.to_string();
  }
}
