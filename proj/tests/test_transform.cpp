#include "doctest.h"
#include "fixtures.hpp"
#include "llv/search.hpp"
#include "llv/transform.hpp"

using namespace llv;
using namespace llv::fixtures;

TEST_CASE("guided step on the worked derivation") {
  Derivation pi = worked_pi();
  GuidedStep s = guided_step(pi);
  CHECK(s.label.rule == Rule::ParAppR);
  CHECK(s.label.path.empty());
  CHECK(alpha_eq(s.result, T("D I || D (\\x y.Omega)")));
  CHECK(measure(s.derivation) == 4);
  CHECK(same_judgment(check(s.derivation), check(worked_pi_prime())));
}

TEST_CASE("guided run on the worked derivation") {
  Trace t = guided_run(worked_pi());
  CHECK(t.length() == 5);
  CHECK(alpha_eq(t.end(), T("I || \\y.Omega")));
  CHECK_NOTHROW(validate_trace(t));
}

TEST_CASE("measure-zero value derivations give empty traces") {
  Trace t = guided_run(unit_value_derivation(T("\\x.Omega")));
  CHECK(t.length() == 0);
}

TEST_CASE("guided step follows the recorded branch") {
  auto d = typable(T("\\x.Omega + Omega"), SearchBounds{});
  REQUIRE(d);
  GuidedStep s = guided_step(*d);
  CHECK(s.label.rule == Rule::PlusL);
  CHECK(alpha_eq(s.result, T("\\x.Omega")));
  CHECK(measure(s.derivation) == 0);
}

TEST_CASE("guided beta step") {
  auto ts = unit_typings(T("I I"), 1, SearchBounds{});
  REQUIRE(ts.size() == 1);
  GuidedStep s = guided_step(ts[0].first);
  CHECK(s.label.rule == Rule::BetaV);
  CHECK(alpha_eq(s.result, T("I")));
  CHECK(measure(s.derivation) == 0);
  CHECK_THROWS_AS(guided_step(s.derivation), TermError);
}

TEST_CASE("expansion of a choice step") {
  Derivation d = unit_value_derivation(T("\\x.Omega"));
  Derivation e = expand_step(d, T("\\x.Omega + Omega"), StepLabel{Rule::PlusL, {}});
  CHECK(check(e).type == parse_type("1"));
  CHECK(measure(e) == 1);
}

TEST_CASE("expansion of the parallel argument step") {
  Derivation e = expand_step(worked_pi_prime(), T("D (I || \\x y.Omega)"), StepLabel{Rule::ParAppR, {}});
  Judgment j = check(e);
  CHECK(j.type == parse_type("1 % 1"));
  CHECK(measure(e) == 5);
  CHECK(same_judgment(j, check(worked_pi())));
}

TEST_CASE("expansion of a beta step") {
  Derivation d = unit_value_derivation(T("I"));
  Derivation e = expand_step(d, T("I I"), StepLabel{Rule::BetaV, {}});
  CHECK(alpha_eq(check(e).subject, T("I I")));
  CHECK(measure(e) == 1);
  auto ts = unit_typings(T("I I"), 1, SearchBounds{});
  REQUIRE(ts.size() == 1);
  CHECK(same_judgment(check(e), check(ts[0].first)));
  CHECK_THROWS_AS(expand_step(d, T("I I"), StepLabel{Rule::PlusL, {}}), TermError);
}

TEST_CASE("type reconstruction from traces") {
  Trace t = guided_run(worked_pi());
  Derivation d = type_via_trace(t);
  CHECK(check(d).type == parse_type("1 % 1"));
  CHECK(measure(d) == 5);

  Trace empty{T("\\x.Omega"), {}};
  CHECK(measure(type_via_trace(empty)) == 0);

  Term dup = T("(\\x.(x || x)) (I + D)");
  Term mid = T("(\\x.(x || x)) I");
  Trace two{dup, {TraceStep{StepLabel{Rule::PlusL, {1}}, mid}, TraceStep{StepLabel{Rule::BetaV, {}}, T("I || I")}}};
  Derivation e = type_via_trace(two);
  CHECK(check(e).type == parse_type("1 % 1"));
  CHECK(measure(e) == 2);

  Trace bad{T("Omega"), {TraceStep{StepLabel{Rule::BetaV, {}}, T("Omega")}}};
  CHECK_THROWS_AS(type_via_trace(bad), TermError);
}

TEST_CASE("guided run of the duplicating sum") {
  auto ts = unit_typings(T("(\\x.(x + x)) (I || D)"), 2, SearchBounds{});
  REQUIRE_FALSE(ts.empty());
  for (const auto& [d, w] : ts) {
    Trace t = guided_run(d);
    CHECK(t.length() == 5);
    CHECK(t.length() == w);
    CHECK(alpha_eq(t.end(), T("I || D")));
  }
}
