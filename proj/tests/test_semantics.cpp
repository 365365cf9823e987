#include <doctest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "llv/semantics.hpp"
#include "llv/syntax.hpp"

using namespace llv;
using namespace llv::fixtures;

namespace {

ParType Ty(const char* s) { return parse_type(s); }

const InterpApprox& interp_of(const std::string& name, std::size_t bound) {
  static std::map<std::pair<std::string, std::size_t>, InterpApprox> cache;
  auto key = std::make_pair(name, bound);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, interp(builtin_corpus().at(name), bound, interp_search_defaults())).first;
  }
  return it->second;
}

ObsParams pool_params(std::vector<Term> pool, std::size_t max_args, bool both = false) {
  ObsParams p;
  p.pool = std::move(pool);
  p.max_args = max_args;
  p.both_directions = both;
  return p;
}

}  // namespace

TEST_CASE("ogre types") {
  CHECK(is_ogre_type(Ty("1")));
  CHECK(is_ogre_type(Ty("1 -o 1")));
  CHECK(is_ogre_type(Ty("(1 -o 1) * (1 -o (1 -o 1))")));
  CHECK(is_ogre_type(Ty("1 -o ((1 -o 1) * (1 -o 1))")));
  CHECK_FALSE(is_ogre_type(Ty("(1 -o 1) -o (1 -o 1)")));
  CHECK_FALSE(is_ogre_type(Ty("1 % 1")));
  CHECK_FALSE(is_ogre_type(Ty("1 -o (1 % 1)")));
  CHECK_FALSE(is_ogre_type(Ty("(1 -o 1) * ((1 -o 1) -o 1)")));
}

TEST_CASE("the ogre unfolds to \\y.Y* and absorbs arguments") {
  CHECK(alpha_eq(ogre(), builtin_corpus().at("Ystar")));
  CHECK(check_ogre_unfolding());
  Term applied = ogre();
  for (const auto& v : default_pool()) applied = Term::app(applied, v);
  for (int i = 0; i < 3; ++i) applied = Term::app(applied, T("\\x.x x"));
  CHECK(converges(applied).converges());
}

TEST_CASE("interp rejects open terms") { CHECK_THROWS_AS(interp(T("x"), 2, interp_search_defaults()), TermError); }

TEST_CASE("interp of Omega is empty") {
  CHECK(interp_of("Omega", 4).types.empty());
  CHECK(interp_of("LamOmegaPar", 4).types.empty());
  CHECK(interp_of("FSp", 4).types.empty());
}

TEST_CASE("interp of Y* up to size 4 is exactly the ogre types") {
  const std::vector<ParType> hand = {
      Ty("1"),
      Ty("1 -o 1"),
      Ty("1 -o (1 -o 1)"),
      Ty("1 -o (1 -o (1 -o 1))"),
      Ty("(1 -o 1) * (1 -o 1)"),
      Ty("1 -o (1 -o (1 -o (1 -o 1)))"),
      Ty("(1 -o 1) * (1 -o (1 -o 1))"),
      Ty("1 -o ((1 -o 1) * (1 -o 1))"),
  };
  const auto& y = interp_of("Ystar", 4);
  CHECK(y.types.size() == hand.size());
  for (const auto& t : hand) CHECK(y.contains(t));
  for (const auto& t : y.types) CHECK(is_ogre_type(t));
  for (std::size_t n = 0; n <= 3; ++n) {
    auto small = interp(ogre(), n, interp_search_defaults());
    std::size_t expected = std::count_if(hand.begin(), hand.end(), [&](const ParType& t) { return type_size(t) <= n; });
    CHECK(small.types.size() == expected);
  }
}

TEST_CASE("(1 -o 1) -o (1 -o 1) separates I from Y*") {
  const auto& i = interp_of("I", 4);
  const auto& y = interp_of("Ystar", 4);
  CHECK(i.contains(Ty("(1 -o 1) -o (1 -o 1)")));
  CHECK_FALSE(y.contains(Ty("(1 -o 1) -o (1 -o 1)")));
  CHECK_FALSE(i.subset_of(y));
}

TEST_CASE("every member of interp has a checked derivation") {
  const auto& s = interp_of("S", 3);
  REQUIRE_FALSE(s.types.empty());
  for (const auto& t : s.types) {
    auto ds = search(Context{}, s.subject, t, interp_search_defaults());
    REQUIRE(ds.size() == 1);
    CHECK(check(ds[0]).type == t);
  }
}

TEST_CASE("interp grows with the bound") {
  for (const char* name : {"I", "D", "S", "P", "DupSum", "IParLamOmega"}) {
    CAPTURE(name);
    for (std::size_t n = 1; n < 4; ++n) {
      const auto& lo = interp_of(name, n);
      const auto& hi = interp_of(name, n + 1);
      CHECK(lo.subset_of(hi));
      for (const auto& t : hi.types) CHECK((type_size(t) > n) == !lo.contains(t));
    }
  }
}

TEST_CASE("interp is nonempty exactly for converging corpus terms") {
  for (const auto& [name, t] : builtin_corpus().entries()) {
    CAPTURE(name);
    Verdict v = converges(t);
    REQUIRE(v.kind != Verdict::Kind::Unknown);
    CHECK(interp_of(name, 2).types.empty() == v.diverges());
  }
}

TEST_CASE("obs_check") {
  SUBCASE("Omega and I differ on no arguments, in the reverse direction") {
    auto r = obs_check(T("(\\x.x x) (\\x.x x)"), T("\\x.x"), pool_params(default_pool(), 0, true));
    CHECK(r.separated);
    CHECK(r.witness.empty());
    CHECK_FALSE(r.m_converges);
    CHECK_FALSE(obs_check(T("(\\x.x x) (\\x.x x)"), T("\\x.x"), pool_params(default_pool(), 2)).separated);
  }
  SUBCASE("FS converges and FS' diverges") {
    auto r = obs_check(builtin_corpus().at("FS"), builtin_corpus().at("FSp"), pool_params(default_pool(), 0));
    CHECK(r.separated);
    CHECK(r.witness.empty());
    CHECK(r.m_converges);
  }
  SUBCASE("I is below Y* on the small pool") {
    std::vector<Term> pool = {T("\\x.x"), T("\\x.x x"), T("\\x.(\\x.x x) (\\x.x x)")};
    auto r = obs_check(T("\\x.x"), ogre(), pool_params(pool, 2));
    CHECK_FALSE(r.separated);
    CHECK(r.vectors_tried == 1 + 3 + 9);
  }
  SUBCASE("Y* is not below I: D D makes I diverge") {
    auto r = obs_check(ogre(), T("\\x.x"), pool_params(default_pool(), 2));
    REQUIRE(r.separated);
    REQUIRE(r.witness.size() == 2);
    CHECK(alpha_eq(r.witness[0], T("\\x.x x")));
    CHECK(alpha_eq(r.witness[1], T("\\x.x x")));
    Term mi = Term::app(Term::app(ogre(), r.witness[0]), r.witness[1]);
    Term ni = Term::app(Term::app(T("\\x.x"), r.witness[0]), r.witness[1]);
    CHECK(converges(mi).converges());
    CHECK(converges(ni).diverges());
  }
  SUBCASE("the default pool and two arguments do not separate I from Y*") {
    CHECK_FALSE(obs_check(T("\\x.x"), ogre(), pool_params(default_pool(), 2)).separated);
  }
  SUBCASE("open terms are rejected") {
    CHECK_THROWS_AS(obs_check(T("x"), T("\\x.x"), pool_params(default_pool(), 1)), TermError);
  }
}

TEST_CASE("adequacy_check") {
  ObsParams p = pool_params(default_pool(), 2);
  SUBCASE("reflexive pairs") {
    for (const char* name : {"I", "Ystar", "FS", "Omega", "P"}) {
      auto r = adequacy_check(interp_of(name, 3), interp_of(name, 3), p);
      CHECK(r.inclusion);
      CHECK(r.holds);
    }
  }
  SUBCASE("\\x.Omega against I") {
    auto r = adequacy_check(interp_of("LamOmega", 3), interp_of("I", 3), p);
    CHECK(r.holds);
  }
  SUBCASE("I against Y*: inclusion fails although I is observationally below") {
    auto r = adequacy_check(interp_of("I", 4), interp_of("Ystar", 4), p);
    CHECK(r.holds);
    CHECK_FALSE(r.inclusion);
    REQUIRE(r.missing);
    CHECK_FALSE(is_ogre_type(*r.missing));
  }
  SUBCASE("Omega is below everything") {
    auto r = adequacy_check(interp_of("Omega", 3), interp_of("I", 3), p);
    CHECK(r.inclusion);
    CHECK(r.holds);
    REQUIRE(r.separation);
    CHECK_FALSE(r.separation->separated);
  }
}

TEST_CASE("the default pool") {
  auto pool = default_pool();
  REQUIRE(pool.size() == 5);
  CHECK(alpha_eq(pool[0], T("\\x.x")));
  CHECK(alpha_eq(pool[1], T("\\x.x x")));
  CHECK(alpha_eq(pool[2], T("\\y.(\\x.x x) (\\x.x x)")));
  CHECK(alpha_eq(pool[3], T("\\a b.a")));
  CHECK(alpha_eq(pool[4], T("\\z.(I || I)")));
  CHECK_THROWS_AS(pool_from_corpus(parse_corpus("let A = x;")), TermError);
}
