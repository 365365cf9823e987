#include <functional>
#include <optional>

#include "doctest.h"
#include "llv/reduction.hpp"
#include "llv/syntax.hpp"

using namespace llv;

namespace {

Term T(const char* s) { return parse_term(s, builtin_corpus()); }

// Minimal distance by iterative deepening over step(), independent of BFS.
std::optional<std::size_t> iddfs_distance(const Term& from, const Term& to, std::size_t limit) {
  std::function<bool(const Term&, std::size_t)> reach = [&](const Term& t, std::size_t d) {
    if (alpha_eq(t, to)) return true;
    if (d == 0) return false;
    for (const auto& [l, n] : step(t)) {
      if (reach(n, d - 1)) return true;
    }
    return false;
  };
  for (std::size_t d = 0; d <= limit; ++d) {
    if (reach(from, d)) return d;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("Omega reduces to itself") {
  auto r = step(T("Omega"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].first.rule == Rule::BetaV);
  CHECK(r[0].first.path.empty());
  CHECK(alpha_eq(r[0].second, T("Omega")));
}

TEST_CASE("a parallel argument blocks descent into it") {
  auto r = step(T("D (I || \\x y.Omega)"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].first.rule == Rule::ParAppR);
  CHECK(alpha_eq(r[0].second, T("D I || D (\\x y.Omega)")));
}

TEST_CASE("choice reduces both ways, left first") {
  auto r = step(T("I + D"));
  REQUIRE(r.size() == 2);
  CHECK(r[0].first.rule == Rule::PlusL);
  CHECK(alpha_eq(r[0].second, T("I")));
  CHECK(r[1].first.rule == Rule::PlusR);
  CHECK(alpha_eq(r[1].second, T("D")));
}

TEST_CASE("parallel function distributes") {
  auto r = step(T("(I || D) I"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].first.rule == Rule::ParAppL);
  CHECK(alpha_eq(r[0].second, T("I I || D I")));
}

TEST_CASE("contextual closure records paths") {
  auto r = step(T("(I I) (D D) || (I + D)"));
  REQUIRE(r.size() == 3);
  CHECK(r[1].first.rule == Rule::PlusL);
  CHECK(r[1].first.path == Path{1});
  CHECK(r[0].first.rule == Rule::BetaV);
  CHECK(r[0].first.path == Path{0, 0});
  CHECK(context_rules(T("(I I) (D D) || (I + D)"), r[0].first.path) == std::vector<std::string>{"CtxParL", "CtxAppL"});
  auto s = step(T("I (I I)"));
  REQUIRE(s.size() == 1);
  CHECK(s[0].first.path == Path{1});
  auto both = step(T("I I || D I"));
  REQUIRE(both.size() == 2);
  CHECK(both[0].first.path == Path{0});
  CHECK(both[1].first.path == Path{1});
}

TEST_CASE("normal forms") {
  CHECK(is_normal(T("\\y.Omega")));
  CHECK_FALSE(is_normal(T("Omega")));
  CHECK(is_normal(T("x (\\y.y)")));
}

TEST_CASE("parallel values") {
  auto v = parallel_values(T("I || \\y.Omega"));
  REQUIRE(v);
  CHECK(v->size() == 2);
  CHECK(parallel_values(T("\\x.Omega"))->size() == 1);
  CHECK_FALSE(parallel_values(T("D I")));
}

TEST_CASE("explore") {
  auto g = explore(T("Omega"), 10, 10);
  CHECK(g.nodes.size() == 1);
  CHECK(g.edges.size() == 1);
  CHECK(g.exhausted);

  Term start = T("D (I || \\x y.Omega)");
  auto h = explore(start, 10, 100);
  auto id = h.find(T("I || \\y.Omega"));
  REQUIRE(id);
  CHECK(h.nodes[*id].layer == 5);
  CHECK(iddfs_distance(start, T("I || \\y.Omega"), 8) == std::optional<std::size_t>(5));

  auto fs = explore(T("FS"), 30, 500);
  CHECK(fs.exhausted);
  CHECK(fs.find(T("I")));
  CHECK(fs.find(T("Omega I")));
  CHECK(fs.find(T("Omega")));
}

TEST_CASE("convergence verdicts") {
  auto v = converges(T("D (I || \\x y.Omega)"));
  REQUIRE(v.converges());
  REQUIRE(v.normal_forms.size() == 1);
  CHECK(alpha_eq(v.normal_forms[0].first, T("I || \\y.Omega")));
  CHECK(v.normal_forms[0].second == 5);

  CHECK(converges(T("FSp")).diverges());

  auto dup = converges(T("(\\x.(x || x)) (I + D)"));
  REQUIRE(dup.converges());
  REQUIRE(dup.normal_forms.size() == 2);
  CHECK(dup.normal_forms[0].second == 2);
  CHECK(dup.normal_forms[1].second == 2);

  auto sum = converges(T("(\\x.(x + x)) (I || D)"));
  REQUIRE(sum.converges());
  REQUIRE(sum.normal_forms.size() == 1);
  CHECK(alpha_eq(sum.normal_forms[0].first, T("I || D")));

  CHECK_THROWS_AS(converges(T("x")), TermError);
  CHECK(converges(T("Omega"), 5, 5).diverges());
}

TEST_CASE("reduction lengths") {
  auto g = explore(T("(\\x.(x || x)) (I + D)"));
  CHECK(reduction_lengths(g, 2) == std::set<std::size_t>{2});
  CHECK(reduction_lengths(g, 1).empty());
  auto ii = explore(T("I I"));
  CHECK(reduction_lengths(ii, 1) == std::set<std::size_t>{1});
}

TEST_CASE("the argument-side parallel rule never appears as a context step") {
  auto g = explore(T("(\\x.(x + x)) (I || D)"));
  for (const auto& e : g.edges) {
    const Term& src = g.nodes[e.src].term;
    const Term& at = subterm_at(src, e.label.path);
    if (at.is(TermKind::App) && at.right().is(TermKind::Par) && is_value(at.left())) {
      CHECK(e.label.rule == Rule::ParAppR);
    }
  }
}
