#include "llv/enumerate.hpp"

#include <string>

namespace llv {

std::string binder_name(std::size_t depth) {
  static const char* const base[] = {"x", "y", "z", "u", "v", "w"};
  std::string name = base[depth % 6];
  if (depth >= 6) name += std::to_string(depth / 6);
  return name;
}

namespace {

std::string free_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i % 20)) + (i >= 20 ? std::to_string(i / 20) : ""); }

// Terms of exactly `size` nodes with `depth` binders in scope. Binders are
// named by depth, so distinct outputs are never alpha-equivalent.
void gen(std::size_t size, std::size_t depth, std::size_t nfree, const std::function<void(const Term&)>& f) {
  if (size == 0) return;
  if (size == 1) {
    for (std::size_t i = depth; i-- > 0;) f(Term::var(binder_name(i)));
    for (std::size_t i = 0; i < nfree; ++i) f(Term::var(free_name(i)));
    return;
  }
  std::string x = binder_name(depth);
  gen(size - 1, depth + 1, nfree, [&](const Term& b) { f(Term::lam(x, b)); });
  for (TermKind k : {TermKind::App, TermKind::Sum, TermKind::Par}) {
    for (std::size_t ls = 1; ls + 1 < size; ++ls) {
      gen(ls, depth, nfree, [&](const Term& l) {
        gen(size - 1 - ls, depth, nfree, [&](const Term& r) {
          switch (k) {
            case TermKind::App:
              f(Term::app(l, r));
              break;
            case TermKind::Sum:
              f(Term::sum(l, r));
              break;
            default:
              f(Term::par(l, r));
              break;
          }
        });
      });
    }
  }
}

}  // namespace

void for_each_term(const TermEnumerator& e, const std::function<void(const Term&)>& f) {
  std::size_t nfree = e.closed ? 0 : e.free_budget;
  for (std::size_t s = 1; s <= e.max_size; ++s) gen(s, 0, nfree, f);
}

std::vector<Term> enumerate_terms(const TermEnumerator& e) {
  std::vector<Term> out;
  for_each_term(e, [&](const Term& t) { out.push_back(t); });
  return out;
}

}  // namespace llv
