#include <string>

#include "doctest.h"
#include "llv/syntax.hpp"
#include "llv/term.hpp"

using namespace llv;

namespace {

Term V(const char* x) { return Term::var(x); }
Term L(const char* x, Term b) { return Term::lam(x, std::move(b)); }
Term A(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }

const Term kI = L("x", V("x"));
const Term kDelta = L("x", A(V("x"), V("x")));

}  // namespace

TEST_CASE("abstraction parses with either lambda spelling") {
  CHECK(alpha_eq(parse_term("\\x.x"), kI));
  CHECK(alpha_eq(parse_term("λx.x"), kI));
  CHECK(alpha_eq(parse_term("\\x y.x"), L("x", L("y", V("x")))));
}

TEST_CASE("application is left associative") {
  Term t = parse_term("x y z");
  CHECK(alpha_eq(t, A(A(V("x"), V("y")), V("z"))));
  CHECK(print_term(t) == "x y z");
}

TEST_CASE("a lambda body stops at || so P is not a value") {
  Corpus c;
  c.define("D", kDelta);
  Term p = parse_term("\\k. D || D", c);
  CHECK(alpha_eq(p, Term::par(L("k", kDelta), kDelta)));
  CHECK_FALSE(is_value(p));
  CHECK(alpha_eq(parse_term(print_term(p)), p));
  CHECK(print_term(p) == "(\\k.\\x.x x) || (\\x.x x)");
}

TEST_CASE("mixing + and || without parentheses is rejected") {
  CHECK_THROWS_WITH_AS(parse_term("a + b || c"), doctest::Contains("ambiguous operator mixing"), ParseError);
  CHECK_NOTHROW(parse_term("(a + b) || c"));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("\\x.(x y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
  }
  CHECK_THROWS_AS(parse_term("Nope"), ParseError);
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_term("\\x.x y")) == std::set<std::string>{"y"});
  CHECK(free_vars(parse_term("x || y")) == std::set<std::string>{"x", "y"});
  CHECK(is_closed(builtin_corpus().at("Ystar")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
  CHECK(alpha_eq(parse_term("\\x.\\y.x"), parse_term("\\y.\\x.y")));
  CHECK_FALSE(alpha_eq(parse_term("\\x.x y"), parse_term("\\y.y y")));
  CHECK(canonical_key(parse_term("\\a.a")) == canonical_key(parse_term("\\b.b")));
}

TEST_CASE("substitution of values") {
  CHECK(alpha_eq(substitute(parse_term("x x"), "x", kDelta), A(kDelta, kDelta)));
  Term r = substitute(parse_term("\\y.x"), "x", V("y"));
  REQUIRE(r.is(TermKind::Lam));
  CHECK(r.name() != "y");
  CHECK(alpha_eq(r, L("z", V("y"))));
  CHECK(alpha_eq(substitute(parse_term("x || x"), "x", kI), Term::par(kI, kI)));
  CHECK_THROWS_AS(substitute(V("x"), "x", A(kI, kI)), TermError);
  CHECK(alpha_eq(substitute(parse_term("\\x.x"), "x", kDelta), kI));
}

TEST_CASE("values") {
  CHECK(is_value(parse_term("\\y.(\\x.x x) (\\x.x x)")));
  CHECK_FALSE(is_value(parse_term("(\\x.x) || \\x.x x")));
  CHECK(is_value(V("x")));
}

TEST_CASE("printing parenthesizes operands of + and ||") {
  Term t = Term::sum(L("x", V("x")), Term::par(V("a"), V("b")));
  CHECK(alpha_eq(parse_term(print_term(t)), t));
  Term u = A(L("x", Term::sum(V("x"), V("x"))), Term::par(kI, kDelta));
  CHECK(alpha_eq(parse_term(print_term(u)), u));
  Term w = A(V("f"), A(V("g"), V("h")));
  CHECK(print_term(w) == "f (g h)");
}

TEST_CASE("corpus files resolve earlier names and pragmas") {
  Corpus c = parse_corpus(
      "# comment\n"
      "let I = \\x.x;\n"
      "let II = I I;\n"
      "@bounds II type-size=3 depth=7\n");
  CHECK(alpha_eq(c.at("II"), A(kI, kI)));
  CHECK(c.bound("II", "type-size", 0) == 3);
  CHECK(c.bound("II", "fuel", 42) == 42);
  CHECK_THROWS_AS(parse_corpus("let A = B;"), ParseError);
  CHECK_THROWS(parse_corpus("let I = \\x.x; let I = \\y.y;"));
}

TEST_CASE("shipped corpus") {
  const Corpus& c = builtin_corpus();
  for (const char* name : {"I", "D", "Omega", "Dstar", "Ystar", "EI", "EOmega", "F", "S", "Sp", "P"}) {
    CHECK_MESSAGE(c.contains(name), name);
  }
  CHECK(alpha_eq(c.at("Ystar"), parse_term("(\\x y.x x) (\\x y.x x)")));
  CHECK(alpha_eq(c.at("Sp"), Term::sum(kI, L("x", kI))));
}
