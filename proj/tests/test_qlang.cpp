#include "fixtures.hpp"
#include "random_corpus.hpp"

#include <secview/error.hpp>
#include <secview/parser.hpp>

#include <gtest/gtest.h>

using namespace secview;
using namespace fixtures;

namespace {

const char* kSchema = "relation P(a:int, b:int).\nrelation R(b:int, c:int).\nrelation T(x:sym).\n";

} // namespace

TEST(Schema, ParsesSortsAndPrints) {
  Schema s = parse_schema(read_data("marks.schema"));
  ASSERT_EQ(s.relations().size(), 1u);
  EXPECT_EQ(s.at("Marks").columns[2].sort, Sort::Int);
  EXPECT_EQ(s.at("Marks").columns[0].sort, Sort::Sym);
  EXPECT_EQ(parse_schema(to_string(s)), s);
  EXPECT_EQ(parse_schema("relation Q(a)").at("Q").columns[0].sort, Sort::Any);
}

TEST(Schema, Errors) {
  EXPECT_THROW(parse_schema("relation P(a:int"), ParseError);
  EXPECT_THROW(parse_schema("relation P(a:float)."), ParseError);
  EXPECT_THROW(parse_schema("relation P(a). relation P(b)."), SemanticError);
  try {
    parse_schema("relation P(a:int).\nrelaton Q(b).");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(Facts, ParsesValuesAndIds) {
  auto s = schema("relation R(a:any, b:any).");
  Instance d = parse_facts("% c\nR(a, null). @7 R(-3, \"x y\"). R(b,1).", s);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.find("R", 7)->values[1], Value::string("x y"));
  EXPECT_EQ(d.find("R", 7)->values[0], I(-3));
  EXPECT_EQ(d.find("R", 8)->values[0], S("b"));
  EXPECT_TRUE(d.find("R", 1)->values[1].is_null());
}

TEST(Facts, Errors) {
  auto s = schema(kSchema);
  EXPECT_THROW(parse_facts("P(1,2)", s), ParseError);
  EXPECT_THROW(parse_facts("P(1).", s), SemanticError);
  EXPECT_THROW(parse_facts("P(a,1).", s), SemanticError);
  EXPECT_THROW(parse_facts("Z(1).", s), SemanticError);
  EXPECT_THROW(parse_facts("P(X,1).", s), ParseError);
}

TEST(Views, ParseAndCheck) {
  auto s = schema(kSchema);
  ViewDef v = parse_view("Vs(X, Z) :- P(X, Y), R(Y, Z), Y < 3.", *s);
  EXPECT_EQ(v.name, "Vs");
  EXPECT_EQ(v.head, (std::vector<std::string>{"X", "Z"}));
  ASSERT_EQ(v.body.size(), 2u);
  ASSERT_EQ(v.phi.size(), 1u);
  EXPECT_EQ(v.phi[0].op, BuiltinOp::Lt);
  EXPECT_EQ(parse_view(v.to_string(), *s), v);

  EXPECT_THROW(parse_view("V(X) :- P(Y, Z).", *s), SemanticError);       // unsafe head
  EXPECT_THROW(parse_view("V(X) :- P(X, Y), Z > 1.", *s), SemanticError); // unsafe built-in
  EXPECT_THROW(parse_view("V(X) :- P(X).", *s), SemanticError);           // arity
  EXPECT_THROW(parse_view("V(X) :- T(X), X < 2.", *s), SemanticError);    // order on sym
  EXPECT_THROW(parse_view("P(X) :- P(X, Y).", *s), SemanticError);        // name clash
  EXPECT_THROW(parse_view("V(a) :- P(X, Y).", *s), ParseError);           // head constant
  EXPECT_THROW(parse_view("V(X) :- X < 2.", *s), SemanticError);          // no atom
  EXPECT_THROW(parse_views("V(X) :- P(X,Y). V(Y) :- P(X,Y).", *s), SemanticError);
}

TEST(Queries, ParseBuiltins) {
  auto s = schema(kSchema);
  Query q = parse_query("?(X) :- P(X, Y), isnull(Y), X != 2, X <> 3, X == 1, null = Y.", *s);
  ASSERT_EQ(q.builtins.size(), 5u);
  EXPECT_EQ(q.builtins[0].op, BuiltinOp::IsNull);
  EXPECT_EQ(q.builtins[1].op, BuiltinOp::Neq);
  EXPECT_EQ(q.builtins[2].op, BuiltinOp::Neq);
  EXPECT_EQ(q.builtins[3].op, BuiltinOp::Eq);
  EXPECT_TRUE(q.builtins[4].compares_with_null());
  EXPECT_EQ(parse_query(q.to_string(), *s), q);

  Query b = parse_query("?() :- P(1, null).", *s);
  EXPECT_TRUE(b.free_vars.empty());
  EXPECT_TRUE(b.body[0].args[1].is_null_constant());
}

TEST(Queries, Classification) {
  auto s = schema(kSchema);
  EXPECT_EQ(classify_query(parse_query("?(X) :- P(X, Y), Y < 3.", *s)), QueryClass::ConjSigma);
  EXPECT_EQ(classify_query(parse_query("?(X) :- P(X, Y), isnull(Y).", *s)), QueryClass::ConjNullSql);
  EXPECT_EQ(classify_query(parse_query("?(X) :- P(X, null).", *s)), QueryClass::ConjNullSql);
  EXPECT_EQ(classify_query(parse_query("?(X) :- P(X, Y), Y = null.", *s)), QueryClass::ConjNullGeneral);
}

TEST(Queries, ErrorPositions) {
  try {
    parse_query_unchecked("?(X) :-\n  P(X, Y) Y.");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
  }
  EXPECT_THROW(parse_query_unchecked("?(X) :- P(X, \"abc)."), ParseError);
  EXPECT_THROW(parse_query_unchecked("?(X) :- P(X, Y) # ."), ParseError);
}

// Printing then parsing a random query gives it back.
TEST(Queries, RandomRoundTrip) {
  corpus::Generator g(11);
  for (int i = 0; i < 300; ++i) {
    auto s = g.schema();
    Query q = g.sql_query(*s);
    EXPECT_EQ(parse_query(q.to_string(), *s), q) << q.to_string();
    ViewDef v = g.view(*s, "V");
    EXPECT_EQ(parse_view(v.to_string(), *s), v) << v.to_string();
  }
}
