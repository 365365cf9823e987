#include "doctest.h"
#include "fixtures.hpp"
#include "llv/derivation.hpp"

using namespace llv;
using namespace llv::fixtures;

TEST_CASE("the worked derivation checks with measure 5") {
  Derivation pi = worked_pi();
  Judgment j = check(pi);
  CHECK(j.ctx.empty());
  CHECK(alpha_eq(j.subject, T("D (I || \\x y.Omega)")));
  CHECK(j.type == parse_type("1 % 1"));
  CHECK(measure(pi) == 5);
  CHECK(measure(worked_pi_prime()) == 4);
  CHECK(check(worked_pi_prime()).type == parse_type("1 % 1"));
}

TEST_CASE("axioms") {
  CompType tau = parse_comp_type("1 -o 1");
  Derivation ax = make_ax("x", tau);
  CHECK(check(ax).ctx == ctx_single("x", tau));
  CHECK(measure(ax) == 0);
  Derivation bad = ax;
  bad.judgment.ctx.clear();
  CHECK_THROWS_WITH_AS(check(bad), doctest::Contains("axiom context"), CheckError);
}

TEST_CASE("elimination side conditions") {
  Derivation app = self_app();
  Derivation empty_block = app;
  empty_block.premises[0] = make_ax("x", CompType{});
  empty_block.premises[1] = make_ax("x", CompType{});
  empty_block.judgment.type = ParType{};
  CHECK_THROWS_AS(check(empty_block), CheckError);

  Derivation no_args = app;
  no_args.premises.erase(no_args.premises.begin() + 1, no_args.premises.end());
  no_args.alignment.clear();
  CHECK_THROWS_WITH_AS(check(no_args), doctest::Contains("k >= 1"), CheckError);

  Derivation mismatch = app;
  mismatch.premises[1] = make_ax("x", parse_comp_type("1 -o 1"));
  CHECK_THROWS_AS(check(mismatch), CheckError);

  // An arrow whose domain is 1 with an empty block is impossible; an n_i = 0
  // block arises from a 1 component of the principal par.
  Derivation zero = make_app(make_ax("f", CompType{}), {make_ax("y", CompType{})}, {AppAlign{0, {}}});
  CHECK_THROWS_WITH_AS(check(zero), doctest::Contains("n_i = 0"), CheckError);
}

TEST_CASE("errors are addressed by premise path") {
  Derivation pi = worked_pi();
  pi.premises[0].premises[1].premises[0].judgment.ctx.clear();
  try {
    check(pi);
    FAIL("expected a check error");
  } catch (const CheckError& e) {
    CHECK(e.path() == std::vector<std::size_t>{0, 1, 0});
  }
}

TEST_CASE("binder leakage is reported") {
  Derivation lam = delta_once();
  lam.judgment.ctx = ctx_single("x", parse_comp_type("1 -o 1"));
  CHECK_THROWS_WITH_AS(check(lam), doctest::Contains("leaks"), CheckError);
}

TEST_CASE("unit typing of values") {
  for (const char* v : {"x", "\\x.x", "\\x.Omega", "Ystar"}) {
    Term t = T(v);
    if (!is_value(t)) continue;
    Derivation d = unit_value_derivation(t);
    CHECK(check(d).type == ParType::units(1));
    CHECK(measure(d) == 0);
  }
  CHECK_THROWS(unit_value_derivation(T("I I")));
}

TEST_CASE("splitting and joining value derivations") {
  Derivation delta = worked_pi().premises[0];
  CompType half = parse_comp_type("(1 -o 1) -o 1");
  auto parts = split_value_derivation(delta, {half, half});
  REQUIRE(parts.size() == 2);
  for (const auto& p : parts) {
    CHECK(check(p).type == ParType::of(half));
    CHECK(measure(p) == 1);
  }
  Derivation joined = join_value_derivations(parts);
  CHECK(same_judgment(check(joined), check(delta)));
  CHECK(measure(joined) == measure(delta));

  auto units = split_value_derivation(unit_value_derivation(T("I")), {CompType{}, CompType{}, CompType{}});
  CHECK(units.size() == 3);
  for (const auto& u : units) CHECK(measure(u) == 0);

  CHECK_THROWS(split_value_derivation(worked_pi(), {CompType{}}));
  CHECK_THROWS(split_value_derivation(delta, {half}));
}

TEST_CASE("joining renames binders") {
  Derivation a = id_unit();
  Derivation b = make_lam("z", T("z"), {make_ax("z", CompType{})});
  Derivation j = join_value_derivations({a, b});
  CHECK(check(j).type == parse_type("(1 -o 1) * (1 -o 1)"));
}

TEST_CASE("substitution of derivations") {
  CompType tau = parse_comp_type("1 -o 1");
  Derivation r = substitute_derivation(make_ax("x", tau), "x", id_unit());
  CHECK(alpha_eq(check(r).subject, T("I")));
  CHECK(measure(r) == 0);

  Derivation s = substitute_derivation(self_app(), "x", id_unit());
  Judgment js = check(s);
  CHECK(alpha_eq(js.subject, T("I I")));
  CHECK(js.type == parse_type("1"));
  CHECK(measure(s) == measure(self_app()));

  CHECK_THROWS(substitute_derivation(self_app(), "x", unit_value_derivation(T("I"))));
}

TEST_CASE("substitution avoids capture") {
  // x:1 -o 1 |- \y.x y : (1 -o 1)... built as y:1 |- x y : 1 under the binder.
  CompType tau = parse_comp_type("1 -o 1");
  Derivation body = make_app(make_ax("x", tau), {make_ax("y", CompType{})}, {AppAlign{0, {0}}});
  Derivation lam = make_lam("y", T("x y"), {body});
  Derivation val = make_ax("y", tau);
  Derivation r = substitute_derivation(lam, "x", val);
  Judgment j = check(r);
  CHECK(alpha_eq(j.subject, T("\\z.y z")));
  CHECK(j.ctx == ctx_single("y", tau));
  CHECK(measure(r) == measure(lam));
}

TEST_CASE("application built by component value") {
  Derivation delta = worked_pi().premises[0];
  Derivation arg = make_par(k_omega(), id_unit());
  Derivation d = make_app_by_value(delta, {arg}, {parse_comp_type("((1 -o 1) -o 1) * ((1 -o 1) -o 1)")});
  CHECK(check(d).type == parse_type("1 % 1"));
  CHECK(measure(d) == 5);
}

TEST_CASE("fingerprints") {
  CHECK(fingerprint(id_unit()) != fingerprint(k_omega()));
  CHECK(fingerprint(worked_pi()) == fingerprint(worked_pi()));
  CHECK(derivation_height(worked_pi()) == 4);
}
