#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_corpus.hpp"

#include <secview/eval.hpp>
#include <secview/parser.hpp>

#include <gtest/gtest.h>

using namespace secview;
using namespace fixtures;

namespace {

AnswerSet rows(std::initializer_list<Row> rs) {
  AnswerSet a;
  for (auto& r : rs) a.rows.insert(r);
  return a;
}

struct SqlNull : ::testing::Test {
  std::shared_ptr<const Schema> s = schema(read_data("rs_sym.schema"));
  Instance d = parse_facts(read_data("sqlnull.facts"), s);
  AnswerSet n(const char* q) { return eval_n(d, parse_query(q, *s)); }
};

} // namespace

TEST(Relevant, CountsAtomsAndBuiltins) {
  Query q = parse_query_unchecked("?(X) :- R(X, Y, Z), S(Y), Y > 2.");
  EXPECT_EQ(relevant_vars(q), (std::set<std::string>{"Y"}));
  q = parse_query_unchecked("?(X) :- R(X, Y), isnull(X), Y = null, Y != null.");
  EXPECT_TRUE(relevant_vars(q).empty());
  q = parse_query_unchecked("?(X) :- R(X, X).");
  EXPECT_EQ(relevant_vars(q), (std::set<std::string>{"X"}));
  q = parse_query_unchecked("?(X) :- R(X, Y), X < 3.");
  EXPECT_EQ(relevant_vars(q), (std::set<std::string>{"X"}));
}

TEST(Builtins, NullSemanticsTable) {
  EXPECT_FALSE(holds_null_semantics(BuiltinOp::Eq, N(), N()));
  EXPECT_TRUE(holds_classical(BuiltinOp::Eq, N(), N()));
  EXPECT_FALSE(holds_null_semantics(BuiltinOp::Neq, N(), I(1)));
  EXPECT_TRUE(holds_classical(BuiltinOp::Neq, N(), I(1)));
  EXPECT_FALSE(holds_classical(BuiltinOp::Lt, N(), I(1)));
  EXPECT_FALSE(holds_classical(BuiltinOp::Ge, N(), I(1)));
  EXPECT_TRUE(holds_null_semantics(BuiltinOp::Le, I(1), I(1)));
  EXPECT_TRUE(holds_null_semantics(BuiltinOp::IsNull, N(), N()));
  EXPECT_FALSE(holds_null_semantics(BuiltinOp::IsNotNull, N(), N()));
}

TEST(Golden, JoinOnNullDroppedUnderNullSemantics) {
  auto s = schema(read_data("rs_sym.schema"));
  Instance d = parse_facts(read_data("join.facts"), s);
  Query q = parse_query(read_data("join.query"), *s);
  EXPECT_EQ(eval_classical(d, q), rows({{S("a"), S("f")}, {S("c"), S("g")}, {S("e"), S("j")}}));
  EXPECT_EQ(eval_n(d, q), rows({{S("a"), S("f")}, {S("c"), S("g")}}));
}

TEST(Golden, NullIsTheOnlyAnswer) {
  auto s = schema(read_data("d2.schema"));
  Instance d = parse_facts(read_data("d2.facts"), s);
  Query q = parse_query(read_data("d2.query"), *s);
  EXPECT_EQ(eval_n(d, q), rows({{N()}}));
}

TEST_F(SqlNull, IsNull) {
  EXPECT_EQ(n("?(X, Y) :- R(X, Y), isnull(Y)."), rows({{S("d"), N()}, {S("v"), N()}, {N(), N()}}));
}

TEST_F(SqlNull, EqualsNullHasNoAnswers) {
  EXPECT_TRUE(n("?(X, Y) :- R(X, Y), Y = null.").empty());
  EXPECT_TRUE(n("?(X, Y) :- R(X, Y), Y != null.").empty());
}

TEST_F(SqlNull, IsNotNull) {
  EXPECT_EQ(n("?(X, Y) :- R(X, Y), isnotnull(Y)."),
            rows({{S("a"), S("b")}, {S("a"), S("c")}, {S("d"), S("e")}, {S("u"), S("u")}, {S("v"), S("r")}}));
}

TEST_F(SqlNull, SelfEquality) { EXPECT_EQ(n("?(X, Y) :- R(X, Y), X = Y."), rows({{S("u"), S("u")}})); }

TEST_F(SqlNull, Inequality) {
  EXPECT_EQ(n("?(X, Y) :- R(X, Y), X != Y."),
            rows({{S("a"), S("b")}, {S("a"), S("c")}, {S("d"), S("e")}, {S("v"), S("r")}}));
}

TEST_F(SqlNull, SelfJoinInequality) {
  EXPECT_EQ(n("?(X, Y, X, Z) :- R(X, Y), R(X, Z), Y != Z."),
            rows({{S("a"), S("b"), S("a"), S("c")}, {S("a"), S("c"), S("a"), S("b")}}));
}

TEST_F(SqlNull, EquiJoin) {
  EXPECT_EQ(n("?(X, Y, Z, T) :- R(X, Y), S(Z, T), Y = Z."), rows({{S("a"), S("b"), S("b"), S("h")}}));
}

TEST_F(SqlNull, ThetaJoin) {
  AnswerSet expect;
  for (auto [x, y] : {std::pair{"a", "c"}, {"d", "e"}, {"u", "u"}, {"v", "r"}})
    expect.rows.insert({S(x), S(y), S("b"), S("h")});
  for (auto [x, y] : {std::pair{"a", "b"}, {"a", "c"}, {"d", "e"}, {"u", "u"}, {"v", "r"}})
    expect.rows.insert({S(x), S(y), S("l"), S("m")});
  EXPECT_EQ(n("?(X, Y, Z, T) :- R(X, Y), S(Z, T), Y != Z."), expect);
}

TEST(Golden, MarksViewIsNotNull) {
  auto s = schema(read_data("marks.schema"));
  Instance d = parse_facts(read_data("marks.facts"), s);
  auto v = parse_views(read_data("marks.views"), *s);
  EXPECT_EQ(eval_n(d, as_query(v[0])), rows({{S("s001"), S("c01"), I(56)}}));
}

TEST(Eval, BooleanQueries) {
  auto s = schema("relation P(a:int, b:int).");
  Instance d = parse_facts("P(1, null).", s);
  EXPECT_TRUE(eval_n(d, parse_query("?() :- P(X, Y).", *s)).yes());
  EXPECT_FALSE(eval_n(d, parse_query("?() :- P(X, X).", *s)).yes());
  EXPECT_TRUE(eval_n(d, parse_query("?() :- P(1, null).", *s)).yes());
  EXPECT_TRUE(eval_n(Instance(s), parse_query("?() :- P(X, Y).", *s)).empty());
}

TEST(Rewrite, AddsGuardsAndReplacesNullTests) {
  Query q = parse_query_unchecked("?(X) :- R(X, Y, Z), S(Y), Y > 2, isnull(Z), isnotnull(X).");
  Query rw = rewrite_query(q);
  EXPECT_EQ(rw.to_string(), "?(X) :- R(X,Y,Z), S(Y), Y > 2, Z = null, X != null, Y != null.");
  EXPECT_EQ(classify_query(rw), QueryClass::ConjNullGeneral);
}

// eval_n and classical evaluation both match a brute-force assignment oracle,
// and rewriting turns one into the other.
TEST(Property, EvaluatorsMatchOracleAndRewrite) {
  corpus::Generator g(2024);
  int nonempty = 0;
  for (int i = 0; i < 400; ++i) {
    auto s = g.schema();
    Instance d = g.instance(s);
    Query q = g.sql_query(*s);
    AnswerSet n = eval_n(d, q);
    nonempty += !n.empty();
    ASSERT_EQ(n, oracle::eval(d, q, oracle::Semantics::Null)) << q.to_string() << "\n" << d.to_string();
    ASSERT_EQ(eval_classical(d, q), oracle::eval(d, q, oracle::Semantics::Classical)) << q.to_string();
    ASSERT_EQ(n, eval_classical(d, rewrite_query(q))) << q.to_string() << "\n" << d.to_string();
  }
  EXPECT_GT(nonempty, 50);
}

// With no relevant variables and no built-ins the two semantics coincide.
TEST(Property, NoRelevantVariablesMeansClassical) {
  corpus::Generator g(77);
  for (int i = 0; i < 200; ++i) {
    auto s = g.schema();
    Instance d = g.instance(s);
    Query q = g.sql_query(*s);
    q.builtins.clear();
    if (!relevant_vars(q).empty()) continue;
    EXPECT_EQ(eval_n(d, q), eval_classical(d, q)) << q.to_string();
  }
}
