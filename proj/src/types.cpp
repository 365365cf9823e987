#include "llv/types.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace llv {

namespace {

template <class T>
std::strong_ordering compare_vec(const std::vector<T>& a, const std::vector<T>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::strong_ordering operator<=>(const CompType& a, const CompType& b) { return compare_vec(a.arrows, b.arrows); }
std::strong_ordering operator<=>(const ParType& a, const ParType& b) { return compare_vec(a.comps, b.comps); }
std::strong_ordering operator<=>(const Arrow& a, const Arrow& b) {
  if (auto c = a.dom <=> b.dom; c != 0) return c;
  return a.cod <=> b.cod;
}
bool operator==(const CompType& a, const CompType& b) { return (a <=> b) == 0; }
bool operator==(const ParType& a, const ParType& b) { return (a <=> b) == 0; }
bool operator==(const Arrow& a, const Arrow& b) { return (a <=> b) == 0; }

void CompType::normalize() { std::sort(arrows.begin(), arrows.end()); }
void ParType::normalize() { std::sort(comps.begin(), comps.end()); }

ParType ParType::of(CompType c) {
  ParType p;
  p.comps.push_back(std::move(c));
  return p;
}

ParType ParType::units(std::size_t k) {
  ParType p;
  p.comps.assign(k, CompType{});
  return p;
}

CompType tensor(const CompType& a, const CompType& b) {
  CompType r;
  r.arrows.reserve(a.arrows.size() + b.arrows.size());
  std::merge(a.arrows.begin(), a.arrows.end(), b.arrows.begin(), b.arrows.end(), std::back_inserter(r.arrows));
  return r;
}

ParType par(const ParType& a, const ParType& b) {
  ParType r;
  r.comps.reserve(a.comps.size() + b.comps.size());
  std::merge(a.comps.begin(), a.comps.end(), b.comps.begin(), b.comps.end(), std::back_inserter(r.comps));
  return r;
}

CompType ctx_lookup(const Context& g, const std::string& x) {
  auto it = g.find(x);
  return it == g.end() ? CompType{} : it->second;
}

Context tensor_ctx(const Context& a, const Context& b) {
  Context r = a;
  for (const auto& [x, t] : b) {
    auto it = r.find(x);
    if (it == r.end()) {
      if (!t.is_one()) r.emplace(x, t);
    } else {
      it->second = tensor(it->second, t);
    }
  }
  return r;
}

Context ctx_single(const std::string& x, const CompType& t) {
  Context r;
  if (!t.is_one()) r.emplace(x, t);
  return r;
}

Context ctx_without(Context g, const std::string& x) {
  g.erase(x);
  return g;
}

std::size_t type_size(const Arrow& t) { return 1 + type_size(t.dom) + type_size(t.cod); }

std::size_t type_size(const CompType& t) {
  std::size_t s = t.arrows.empty() ? 0 : t.arrows.size() - 1;
  for (const auto& a : t.arrows) s += type_size(a);
  return s;
}

std::size_t type_size(const ParType& t) {
  std::size_t s = t.comps.size() - 1;
  for (const auto& c : t.comps) s += type_size(c);
  return s;
}

// ---------------------------------------------------------------------------
// Concrete syntax

namespace {

enum class TT { One, LParen, RParen, Tensor, Par, Lolli, End };

struct TTok {
  TT kind;
  std::size_t pos;
};

std::vector<TTok> lex_type(std::string_view s) {
  std::vector<TTok> out;
  std::size_t i = 0;
  auto at = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    } else if (s[i] == '1') {
      out.push_back({TT::One, i++});
    } else if (s[i] == '(') {
      out.push_back({TT::LParen, i++});
    } else if (s[i] == ')') {
      out.push_back({TT::RParen, i++});
    } else if (s[i] == '*') {
      out.push_back({TT::Tensor, i++});
    } else if (s[i] == '%') {
      out.push_back({TT::Par, i++});
    } else if (at("-o")) {
      out.push_back({TT::Lolli, i});
      i += 2;
    } else if (at("\xE2\x8A\x97")) {  // ⊗
      out.push_back({TT::Tensor, i});
      i += 3;
    } else if (at("\xE2\x85\x8B")) {  // ⅋
      out.push_back({TT::Par, i});
      i += 3;
    } else if (at("\xE2\x8A\xB8")) {  // ⊸
      out.push_back({TT::Lolli, i});
      i += 3;
    } else {
      throw TypeError("unexpected character in type at offset " + std::to_string(i));
    }
  }
  out.push_back({TT::End, s.size()});
  return out;
}

class TypeParser {
 public:
  explicit TypeParser(std::vector<TTok> toks) : toks_(std::move(toks)) {}

  ParType parse_all() {
    ParType t = par_level();
    if (peek() != TT::End) fail("unexpected trailing input");
    return t;
  }

 private:
  TT peek() const { return toks_[i_].kind; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw TypeError(msg + " at offset " + std::to_string(toks_[i_].pos));
  }

  CompType as_comp(ParType p) const {
    if (!p.is_comp()) fail("a par type cannot appear inside a tensor or an arrow domain");
    return std::move(p.comps.front());
  }

  ParType par_level() {
    ParType acc = tensor_level();
    while (peek() == TT::Par) {
      ++i_;
      acc = par(acc, tensor_level());
    }
    return acc;
  }

  ParType tensor_level() {
    ParType first = arrow_level();
    if (peek() != TT::Tensor) return first;
    CompType acc = as_comp(std::move(first));
    while (peek() == TT::Tensor) {
      ++i_;
      acc = tensor(acc, as_comp(arrow_level()));
    }
    return ParType::of(std::move(acc));
  }

  ParType arrow_level() {
    ParType lhs = atom();
    if (peek() != TT::Lolli) return lhs;
    ++i_;
    Arrow a{as_comp(std::move(lhs)), arrow_level()};
    CompType c;
    c.arrows.push_back(std::move(a));
    return ParType::of(std::move(c));
  }

  ParType atom() {
    switch (peek()) {
      case TT::One:
        ++i_;
        return ParType::of(CompType{});
      case TT::LParen: {
        ++i_;
        ParType inner = par_level();
        if (peek() != TT::RParen) fail("expected ')'");
        ++i_;
        return inner;
      }
      case TT::End:
        fail("unexpected end of type");
      default:
        fail("expected '1' or '('");
    }
  }

  std::vector<TTok> toks_;
  std::size_t i_ = 0;
};

std::string print_arrow(const Arrow& a);

std::string print_comp_in(const CompType& c, bool wrap_single) {
  if (c.arrows.empty()) return "1";
  if (c.arrows.size() == 1) {
    std::string s = print_arrow(c.arrows.front());
    return wrap_single ? "(" + s + ")" : s;
  }
  std::string out;
  for (std::size_t i = 0; i < c.arrows.size(); ++i) {
    if (i) out += " * ";
    out += "(" + print_arrow(c.arrows[i]) + ")";
  }
  return out;
}

std::string print_arrow(const Arrow& a) {
  std::string out = a.dom.is_one() ? "1" : "(" + print_comp_in(a.dom, false) + ")";
  out += " -o ";
  if (a.cod.is_comp() && a.cod.comps.front().is_one()) {
    out += "1";
  } else {
    out += "(" + print_type(a.cod) + ")";
  }
  return out;
}

}  // namespace

ParType parse_type(std::string_view text) { return TypeParser(lex_type(text)).parse_all(); }

CompType parse_comp_type(std::string_view text) {
  ParType p = parse_type(text);
  if (!p.is_comp()) throw TypeError("expected a computational type, got a par of arity " + std::to_string(p.arity()));
  return p.comps.front();
}

std::string print_type(const CompType& t) { return print_comp_in(t, false); }

std::string print_type(const ParType& t) {
  if (t.is_comp()) return print_comp_in(t.comps.front(), false);
  std::string out;
  for (std::size_t i = 0; i < t.comps.size(); ++i) {
    if (i) out += " % ";
    out += print_comp_in(t.comps[i], true);
  }
  return out;
}

std::string print_context(const Context& g) {
  std::string out;
  for (const auto& [x, t] : g) {
    if (!out.empty()) out += ", ";
    out += x + ":" + print_type(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

// All ways of writing m as an ordered sum of n naturals.
void compositions(std::size_t m, std::size_t n, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= m; ++i) {
    cur.push_back(i);
    compositions(m - i, n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<CompType>> split_comp(const CompType& t, std::size_t n) {
  if (n == 0) throw TypeError("split_comp needs n >= 1");
  // Group equal arrows; distributing multiplicities avoids duplicate tuples.
  std::vector<std::pair<Arrow, std::size_t>> groups;
  for (const auto& a : t.arrows) {
    if (!groups.empty() && groups.back().first == a) {
      ++groups.back().second;
    } else {
      groups.emplace_back(a, 1);
    }
  }
  std::vector<std::vector<CompType>> out{std::vector<CompType>(n)};
  for (const auto& [arrow, mult] : groups) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> cur;
    compositions(mult, n, cur, comps);
    std::vector<std::vector<CompType>> next;
    for (const auto& partial : out) {
      for (const auto& c : comps) {
        auto tuple = partial;
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t r = 0; r < c[b]; ++r) tuple[b].arrows.push_back(arrow);
        }
        next.push_back(std::move(tuple));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<Context>> split_ctx(const Context& g, std::size_t n) {
  std::vector<std::vector<Context>> out{std::vector<Context>(n)};
  for (const auto& [x, t] : g) {
    auto parts = split_comp(t, n);
    std::vector<std::vector<Context>> next;
    for (const auto& partial : out) {
      for (const auto& p : parts) {
        auto tuple = partial;
        for (std::size_t b = 0; b < n; ++b) {
          if (!p[b].is_one()) tuple[b].emplace(x, p[b]);
        }
        next.push_back(std::move(tuple));
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct TypeTables {
  std::vector<std::vector<Arrow>> arrows;  // by exact size
  std::vector<std::vector<CompType>> comps;
  std::vector<std::vector<ParType>> pars;
  std::mutex mu;

  template <class T>
  static std::vector<T> upto(const std::vector<std::vector<T>>& by_size, std::size_t s) {
    std::vector<T> all;
    for (std::size_t i = 0; i <= s && i < by_size.size(); ++i) all.insert(all.end(), by_size[i].begin(), by_size[i].end());
    std::sort(all.begin(), all.end());
    return all;
  }

  // Nondecreasing picks from `pool` (sorted), exactly `count` elements whose
  // sizes sum to `total`.
  template <class T>
  static void multisets(const std::vector<T>& pool, const std::vector<std::size_t>& sizes, std::size_t from,
                        std::size_t count, std::size_t total, std::vector<T>& cur, std::vector<std::vector<T>>& out) {
    if (count == 0) {
      if (total == 0) out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (sizes[i] > total) continue;
      cur.push_back(pool[i]);
      multisets(pool, sizes, i, count - 1, total - sizes[i], cur, out);
      cur.pop_back();
    }
  }

  void grow(std::size_t s) {
    while (comps.size() <= s) {
      std::size_t n = comps.size();
      // Arrows of size n: dom size a, cod size n-1-a.
      std::vector<Arrow> as;
      if (n >= 1) {
        for (std::size_t a = 0; a <= n - 1; ++a) {
          std::size_t b = n - 1 - a;
          for (const auto& d : comps[a]) {
            for (const auto& c : pars[b]) as.push_back(Arrow{d, c});
          }
        }
      }
      std::sort(as.begin(), as.end());
      arrows.push_back(std::move(as));

      std::vector<CompType> cs;
      if (n == 0) {
        cs.push_back(CompType{});
      } else {
        auto pool = upto(arrows, n);
        std::vector<std::size_t> sizes;
        for (const auto& a : pool) sizes.push_back(type_size(a));
        for (std::size_t cnt = 1; cnt <= n; ++cnt) {
          if (cnt - 1 > n) break;
          std::vector<Arrow> cur;
          std::vector<std::vector<Arrow>> picks;
          multisets(pool, sizes, 0, cnt, n - (cnt - 1), cur, picks);
          for (auto& p : picks) cs.push_back(CompType{std::move(p)});
        }
      }
      std::sort(cs.begin(), cs.end());
      comps.push_back(std::move(cs));

      std::vector<ParType> ps;
      auto pool = upto(comps, n);
      std::vector<std::size_t> sizes;
      for (const auto& c : pool) sizes.push_back(type_size(c));
      for (std::size_t cnt = 1; cnt <= n + 1; ++cnt) {
        std::vector<CompType> cur;
        std::vector<std::vector<CompType>> picks;
        multisets(pool, sizes, 0, cnt, n - (cnt - 1), cur, picks);
        for (auto& p : picks) ps.push_back(ParType{std::move(p)});
      }
      std::sort(ps.begin(), ps.end());
      pars.push_back(std::move(ps));
    }
  }
};

TypeTables& tables() {
  static TypeTables t;
  return t;
}

}  // namespace

std::vector<ParType> enumerate_types(std::size_t max_size) {
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  t.grow(max_size);
  std::vector<ParType> out;
  for (std::size_t s = 0; s <= max_size; ++s) out.insert(out.end(), t.pars[s].begin(), t.pars[s].end());
  return out;
}

std::vector<CompType> enumerate_comp_types(std::size_t max_size) {
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  t.grow(max_size);
  std::vector<CompType> out;
  for (std::size_t s = 0; s <= max_size; ++s) out.insert(out.end(), t.comps[s].begin(), t.comps[s].end());
  return out;
}

// ---------------------------------------------------------------------------
// Relational encoding

std::strong_ordering operator<=>(const NestedMultiset& a, const NestedMultiset& b) {
  if (a.is_pair != b.is_pair) return a.is_pair <=> b.is_pair;
  return std::lexicographical_compare_three_way(a.items.begin(), a.items.end(), b.items.begin(), b.items.end());
}

bool operator==(const NestedMultiset& a, const NestedMultiset& b) { return (a <=> b) == 0; }

NestedMultiset encode_comp(const CompType& t) {
  NestedMultiset m;
  for (const auto& a : t.arrows) {
    NestedMultiset pair;
    pair.is_pair = true;
    pair.items.push_back(encode_comp(a.dom));
    pair.items.push_back(encode_type(a.cod));
    m.items.push_back(std::move(pair));
  }
  std::sort(m.items.begin(), m.items.end());
  return m;
}

NestedMultiset encode_type(const ParType& t) {
  NestedMultiset m;
  for (const auto& c : t.comps) m.items.push_back(encode_comp(c));
  std::sort(m.items.begin(), m.items.end());
  return m;
}

std::string print_nested(const NestedMultiset& m) {
  std::string out = m.is_pair ? "(" : "[";
  for (std::size_t i = 0; i < m.items.size(); ++i) {
    if (i) out += ",";
    out += print_nested(m.items[i]);
  }
  out += m.is_pair ? ")" : "]";
  return out;
}

}  // namespace llv
