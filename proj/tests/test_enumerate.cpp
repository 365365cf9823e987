#include <map>
#include <set>

#include "doctest.h"
#include "llv/enumerate.hpp"
#include "llv/reduction.hpp"
#include "llv/syntax.hpp"

using namespace llv;

namespace {

// Independent count: c(1,d) = d + f and
// c(s,d) = c(s-1,d+1) + 3 * sum_{a+b=s-1} c(a,d) c(b,d).
std::size_t count(std::size_t s, std::size_t d, std::size_t f, std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (s == 0) return 0;
  if (s == 1) return d + f;
  auto it = memo.find({s, d});
  if (it != memo.end()) return it->second;
  std::size_t n = count(s - 1, d + 1, f, memo);
  for (std::size_t a = 1; a + 1 < s; ++a) n += 3 * count(a, d, f, memo) * count(s - 1 - a, d, f, memo);
  memo[{s, d}] = n;
  return n;
}

std::size_t oracle(std::size_t max, std::size_t f) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::size_t total = 0;
  for (std::size_t s = 1; s <= max; ++s) total += count(s, 0, f, memo);
  return total;
}

}  // namespace

TEST_CASE("small closed terms") {
  auto ts = enumerate_terms(TermEnumerator{2, 0, true});
  REQUIRE(ts.size() == 1);
  CHECK(alpha_eq(ts[0], parse_term("\\x.x")));
  auto three = enumerate_terms(TermEnumerator{3, 0, true});
  CHECK(three.size() == 3);
}

TEST_CASE("counts match the recursive oracle") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(enumerate_terms(TermEnumerator{n, 0, true}).size() == oracle(n, 0));
    CHECK(enumerate_terms(TermEnumerator{n, 2, false}).size() == oracle(n, 2));
  }
  CHECK(oracle(4, 0) == 9);
}

TEST_CASE("enumeration is duplicate free up to alpha and closed when asked") {
  std::set<std::string> keys;
  for (const auto& t : enumerate_terms(TermEnumerator{6, 1, false})) {
    CHECK(keys.insert(canonical_key(t)).second);
  }
  for (const auto& t : enumerate_terms(TermEnumerator{6, 0, true})) CHECK(is_closed(t));
}

TEST_CASE("printing round trips on enumerated terms") {
  for_each_term(TermEnumerator{7, 2, false}, [](const Term& t) {
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  });
}

TEST_CASE("substitution laws on enumerated terms") {
  Term v = parse_term("\\x.x b");
  for_each_term(TermEnumerator{6, 2, false}, [&](const Term& t) {
    Term r = substitute(t, "a", v);
    auto fv = free_vars(t);
    if (!fv.count("a")) {
      CHECK(alpha_eq(r, t));
    } else {
      fv.erase("a");
      fv.insert("b");
      CHECK(free_vars(r) == fv);
    }
  });
}

TEST_CASE("determinism of the choice-free fragment") {
  for_each_term(TermEnumerator{7, 0, true}, [](const Term& t) {
    bool has_sum = false;
    std::function<void(const Term&)> scan = [&](const Term& u) {
      if (u.is(TermKind::Sum)) has_sum = true;
      if (u.is(TermKind::Var)) return;
      scan(u.child(0));
      if (!u.is(TermKind::Lam)) scan(u.child(1));
    };
    scan(t);
    if (has_sum) return;
    auto g = explore(t, 50, 500);
    if (!g.exhausted) return;
    CHECK(normal_form_keys(g).size() <= 1);
  });
}
