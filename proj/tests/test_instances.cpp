#include "fixtures.hpp"
#include "random_corpus.hpp"

#include <secview/analysis.hpp>
#include <secview/error.hpp>
#include <secview/instances.hpp>
#include <secview/parser.hpp>

#include <gtest/gtest.h>

using namespace secview;
using namespace fixtures;

namespace {

std::vector<ChangeSet> changes(const std::vector<SecrecySolution>& sols) {
  std::vector<ChangeSet> out;
  for (const auto& s : sols) out.push_back(s.changes);
  return out;
}

struct PR : ::testing::Test {
  std::shared_ptr<const Schema> s = schema(read_data("pr.schema"));
  std::vector<ViewDef> views = parse_views(read_data("pr.views"), *s);
  Instance d = parse_facts(read_data("pr.facts"), s);
  Instance facts(const char* text) { return parse_facts(text, s); }
};

} // namespace

TEST(TupleOrder, Basics) {
  EXPECT_TRUE(tuple_leq(row({S("a"), N()}), row({S("a"), S("b")})));
  EXPECT_TRUE(tuple_leq(row({S("a"), S("b")}), row({S("a"), S("b")})));
  EXPECT_FALSE(tuple_leq(row({S("a"), S("b")}), row({S("a"), N()})));
  EXPECT_FALSE(tuple_leq(row({S("c"), N()}), row({S("a"), S("b")})));
  EXPECT_THROW(tuple_leq(row({S("a")}), row({S("a"), S("b")})), SemanticError);
}

TEST_F(PR, InstanceOrder) {
  Instance d1 = facts("P(null,2). R(2,null).");
  Instance d2 = facts("P(1,null). R(2,1).");
  Instance d3 = facts("P(1,2). R(null,1).");
  Instance d4 = facts("P(1,null). R(null,1).");
  EXPECT_TRUE(instance_leq_D(d, d3, d4));
  EXPECT_FALSE(instance_leq_D(d, d4, d3));
  EXPECT_FALSE(instance_leq_D(d, d1, d2));
  EXPECT_FALSE(instance_leq_D(d, d2, d1));
  EXPECT_TRUE(instance_leq_D(d, d1, d1));
  EXPECT_THROW(instance_leq_D(d, facts("P(5,2). R(2,1)."), d1), SemanticError);
}

TEST_F(PR, CandidateCells) {
  std::set<Cell> expect{{"P", 1, 1}, {"P", 1, 2}, {"R", 1, 1}, {"R", 1, 2}};
  EXPECT_EQ(candidate_cells(d, views, EnumerationMode::Paper), expect);
  EXPECT_TRUE(candidate_cells(facts("P(1,null). R(2,1)."), views, EnumerationMode::Paper).empty());
  auto one = facts("P(1,2).");
  EXPECT_EQ(candidate_cells(one, views, EnumerationMode::Exhaustive), (std::set<Cell>{{"P", 1, 1}, {"P", 1, 2}}));
}

TEST_F(PR, ThreeSecrecyInstances) {
  auto sols = enumerate_secrecy_instances(d, views);
  std::vector<ChangeSet> expect{{{"P", 1, 1}, {"R", 1, 2}}, {{"P", 1, 2}}, {{"R", 1, 1}}};
  EXPECT_EQ(changes(sols), expect);
  ASSERT_EQ(sols.size(), 3u);
  EXPECT_EQ(sols[0].instance, facts("P(null,2). R(2,null)."));
  EXPECT_EQ(sols[1].instance, facts("P(1,null). R(2,1)."));
  EXPECT_EQ(sols[2].instance, facts("P(1,2). R(null,1)."));
  // the doubly nulled instance is admissible but not minimal
  for (const auto& s : sols) EXPECT_NE(s.changes, (ChangeSet{{"P", 1, 2}, {"R", 1, 1}}));

  EXPECT_EQ(changes(oracle_secrecy_instances(d, views)), expect);
  EXPECT_EQ(changes(enumerate_secrecy_instances(d, views, {EnumerationMode::Exhaustive})), expect);
}

TEST(SecrecyInstances, TwoPairs) {
  auto s = schema(read_data("pr.schema"));
  auto d = parse_facts(read_data("pr4.facts"), s);
  auto views = parse_views(read_data("pr4.views"), *s);
  auto sols = enumerate_secrecy_instances(d, views);
  ASSERT_EQ(sols.size(), 3u);
  std::vector<Instance> got;
  for (auto& x : sols) got.push_back(x.instance);
  for (const char* t : {"P(null,2). P(3,4). R(2,null). R(3,3).", "P(1,null). P(3,4). R(2,1). R(3,3).",
                        "P(1,2). P(3,4). R(null,1). R(3,3)."})
    EXPECT_NE(std::find(got.begin(), got.end(), parse_facts(t, s)), got.end()) << t;
}

TEST(SecrecyInstances, AdmissibleInputIsItsOwnInstance) {
  auto s = schema("relation P(a:sym). relation R(a:sym).");
  auto d = parse_facts("P(a).", s);
  auto views = parse_views("V(X) :- P(X), R(X).", *s);
  auto sols = enumerate_secrecy_instances(d, views);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_TRUE(sols[0].changes.empty());
  EXPECT_EQ(sols[0].instance, d);
  EXPECT_EQ(oracle_secrecy_instances(Instance(s), views).size(), 1u);
}

TEST(SecrecyInstances, SelectionView) {
  auto s = schema("relation P(a:int, b:int).");
  auto d = parse_facts("P(1,1).", s);
  auto views = parse_views("Vs(X) :- P(X, Y), X = 1.", *s);
  auto sols = enumerate_secrecy_instances(d, views);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].instance, parse_facts("P(null,1).", s));
}

// A constant in the view body: nulling the matched cell also nullifies the
// view. Only the brute force finds that instance.
TEST(SecrecyInstances, BodyConstantModesDiffer) {
  auto s = schema("relation P(a:int, b:int).");
  auto d = parse_facts("P(1,2).", s);
  auto views = parse_views("Vs(X) :- P(X, 2).", *s);
  EXPECT_EQ(changes(enumerate_secrecy_instances(d, views)), (std::vector<ChangeSet>{{{"P", 1, 1}}}));
  std::vector<ChangeSet> all{{{"P", 1, 1}}, {{"P", 1, 2}}};
  EXPECT_EQ(changes(oracle_secrecy_instances(d, views)), all);
  EXPECT_EQ(changes(enumerate_secrecy_instances(d, views, {EnumerationMode::Exhaustive})), all);
}

TEST(SecrecyInstances, Bounds) {
  auto s = schema("relation P(a:int, b:int).");
  Instance d(s);
  for (int i = 0; i < 9; ++i) d.add("P", row({I(i), I(i)}));
  auto views = parse_views("Vs(X) :- P(X, Y).", *s);
  EXPECT_THROW(oracle_secrecy_instances(d, views), BoundExceeded);
  EXPECT_THROW(enumerate_secrecy_instances(d, views, {EnumerationMode::Paper, 8}), BoundExceeded);
  EXPECT_EQ(enumerate_secrecy_instances(d, views).size(), 1u);
}

// Returned solutions are admissible, minimal and pairwise incomparable, and
// the paper-mode enumeration matches the brute force on constant-free views.
TEST(Property, PaperModeMatchesOracle) {
  corpus::Generator g(4242);
  int multi = 0;
  for (int i = 0; i < 300; ++i) {
    auto c = g.secrecy_case();
    if (c.instance.non_null_cells().size() > 12) continue;
    auto sols = enumerate_secrecy_instances(c.instance, c.views);
    auto ref = oracle_secrecy_instances(c.instance, c.views);
    ASSERT_EQ(changes(sols), changes(ref)) << c.instance.to_string() << c.views[0].to_string();
    multi += sols.size() > 1;
    for (const auto& a : sols) {
      EXPECT_TRUE(is_admissible(a.instance, c.views));
      for (const auto& b : sols)
        if (&a != &b) EXPECT_FALSE(std::includes(b.changes.begin(), b.changes.end(), a.changes.begin(), a.changes.end()));
    }
    if (is_admissible(c.instance, c.views)) {
      ASSERT_EQ(sols.size(), 1u);
      EXPECT_TRUE(sols[0].changes.empty());
    }
  }
  EXPECT_GT(multi, 30);
}
