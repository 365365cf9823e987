#include "llv/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace llv {

namespace {

// ---------------------------------------------------------------------------
// Type patterns: computational types with metavariables ("holes") in tensor
// position. A hole stands for an unknown tensor of arrows.

struct PArrow;

struct PComp {
  std::vector<PArrow> arrows;
  std::vector<int> holes;
};

struct PPar {
  std::vector<PComp> comps;
};

struct PArrow {
  PComp dom;
  PPar cod;
};

PComp hole_comp(int h) { return PComp{{}, {h}}; }

PComp pattern_of(const CompType& t);

PPar pattern_of(const ParType& t) {
  PPar p;
  for (const auto& c : t.comps) p.comps.push_back(pattern_of(c));
  return p;
}

PComp pattern_of(const CompType& t) {
  PComp p;
  for (const auto& a : t.arrows) p.arrows.push_back(PArrow{pattern_of(a.dom), pattern_of(a.cod)});
  return p;
}

std::string key(const PComp& c);

std::string key(const PPar& p) {
  std::vector<std::string> ks;
  for (const auto& c : p.comps) ks.push_back(key(c));
  std::sort(ks.begin(), ks.end());
  std::string s = "[";
  for (const auto& k : ks) s += k + ";";
  return s + "]";
}

std::string key(const PArrow& a) { return "(" + key(a.dom) + ">" + key(a.cod) + ")"; }

std::string key(const PComp& c) {
  std::vector<std::string> ks;
  for (const auto& a : c.arrows) ks.push_back(key(a));
  std::sort(ks.begin(), ks.end());
  std::vector<int> hs = c.holes;
  std::sort(hs.begin(), hs.end());
  std::string s = "{";
  for (const auto& k : ks) s += k;
  for (int h : hs) s += "h" + std::to_string(h) + ",";
  return s + "}";
}

// Lower bound on the size of any instance: holes may become 1.
std::size_t size_lb(const PComp& c);

std::size_t size_lb(const PPar& p) {
  std::size_t s = p.comps.size() - 1;
  for (const auto& c : p.comps) s += size_lb(c);
  return s;
}

std::size_t size_lb(const PComp& c) {
  std::size_t s = c.arrows.empty() ? 0 : c.arrows.size() - 1;
  for (const auto& a : c.arrows) s += 1 + size_lb(a.dom) + size_lb(a.cod);
  return s;
}

bool occurs(int h, const PComp& c);

bool occurs(int h, const PPar& p) {
  return std::any_of(p.comps.begin(), p.comps.end(), [&](const PComp& c) { return occurs(h, c); });
}

bool occurs(int h, const PComp& c) {
  if (std::find(c.holes.begin(), c.holes.end(), h) != c.holes.end()) return true;
  return std::any_of(c.arrows.begin(), c.arrows.end(),
                     [&](const PArrow& a) { return occurs(h, a.dom) || occurs(h, a.cod); });
}

// ---------------------------------------------------------------------------
// Search state

enum class GoalKind { Type, Close, LamExt };

struct Goal {
  GoalKind kind;
  int node = 0;
  std::string var;         // Close
  PComp dom;               // Close
  std::vector<int> holes;  // LamExt
};

struct SNode {
  SNode(Term t, PPar g, std::size_t d) : term(std::move(t)), goal(std::move(g)), depth(d) {}

  Term term;
  PPar goal;
  DRule rule = DRule::Ax;
  std::vector<int> premises;
  std::size_t depth = 1;
  bool open_type = true;
  bool open_ext = false;
};

struct State {
  std::vector<std::optional<PComp>> bind;
  std::vector<SNode> nodes;
  std::vector<Goal> goals;

  int fresh() {
    bind.emplace_back();
    return static_cast<int>(bind.size()) - 1;
  }
};

PComp resolve(const State& s, const PComp& c);

PPar resolve(const State& s, const PPar& p) {
  PPar out;
  for (const auto& c : p.comps) out.comps.push_back(resolve(s, c));
  return out;
}

PComp resolve(const State& s, const PComp& c) {
  PComp out;
  for (const auto& a : c.arrows) out.arrows.push_back(PArrow{resolve(s, a.dom), resolve(s, a.cod)});
  for (int h : c.holes) {
    if (s.bind[h]) {
      PComp r = resolve(s, *s.bind[h]);
      out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
      out.holes.insert(out.holes.end(), r.holes.begin(), r.holes.end());
    } else {
      out.holes.push_back(h);
    }
  }
  return out;
}

/// Binds h after an occurs check against the resolved value.
bool bind_hole(State& s, int h, const PComp& value) {
  PComp r = resolve(s, value);
  if (occurs(h, r)) return false;
  s.bind[h] = std::move(r);
  return true;
}

// ---------------------------------------------------------------------------
// Unification modulo AC1 of the tensor

struct Eq {
  bool is_par = false;
  PComp a, b;
  PPar pa, pb;
};

Eq comp_eq(PComp a, PComp b) { return Eq{false, std::move(a), std::move(b), {}, {}}; }
Eq par_eq(PPar a, PPar b) { return Eq{true, {}, {}, std::move(a), std::move(b)}; }

void unify(State s, std::vector<Eq> eqs, std::vector<State>& out);

// Replaces repeated occurrences of a hole by fresh aliases, returning the
// alias equations.
void unshare_holes(State& s, PComp& c, std::vector<Eq>& extra) {
  std::set<int> seen;
  for (int& h : c.holes) {
    if (!seen.insert(h).second) {
      int alias = s.fresh();
      extra.push_back(comp_eq(hole_comp(alias), hole_comp(h)));
      h = alias;
    }
  }
}

void unify_comp(State s, PComp a, PComp b, std::vector<Eq> rest, std::vector<State>& out) {
  a = resolve(s, a);
  b = resolve(s, b);
  // Cancel common holes and identical arrows.
  {
    std::vector<int> ha;
    for (int h : a.holes) {
      auto it = std::find(b.holes.begin(), b.holes.end(), h);
      if (it != b.holes.end()) {
        b.holes.erase(it);
      } else {
        ha.push_back(h);
      }
    }
    a.holes = std::move(ha);
    std::vector<std::string> kb;
    for (const auto& x : b.arrows) kb.push_back(key(x));
    std::vector<char> gone(b.arrows.size(), 0);
    std::vector<PArrow> aa;
    for (auto& x : a.arrows) {
      std::string k = key(x);
      bool hit = false;
      for (std::size_t j = 0; j < kb.size(); ++j) {
        if (!gone[j] && kb[j] == k) {
          gone[j] = 1;
          hit = true;
          break;
        }
      }
      if (!hit) aa.push_back(std::move(x));
    }
    a.arrows = std::move(aa);
    std::vector<PArrow> bb;
    for (std::size_t j = 0; j < b.arrows.size(); ++j) {
      if (!gone[j]) bb.push_back(std::move(b.arrows[j]));
    }
    b.arrows = std::move(bb);
  }
  bool a_empty = a.arrows.empty() && a.holes.empty();
  bool b_empty = b.arrows.empty() && b.holes.empty();
  if (a_empty && b_empty) return unify(std::move(s), std::move(rest), out);
  if (a_empty || b_empty) {
    PComp& other = a_empty ? b : a;
    if (!other.arrows.empty()) return;
    for (int h : other.holes) {
      if (!s.bind[h]) s.bind[h] = PComp{};
    }
    return unify(std::move(s), std::move(rest), out);
  }
  if (a.arrows.empty() && a.holes.size() == 1) {
    if (!bind_hole(s, a.holes[0], b)) return;
    return unify(std::move(s), std::move(rest), out);
  }
  if (b.arrows.empty() && b.holes.size() == 1) {
    if (!bind_hole(s, b.holes[0], a)) return;
    return unify(std::move(s), std::move(rest), out);
  }
  {
    std::vector<Eq> extra;
    unshare_holes(s, a, extra);
    unshare_holes(s, b, extra);
    if (!extra.empty()) {
      std::vector<Eq> next;
      next.push_back(comp_eq(a, b));
      next.insert(next.end(), extra.begin(), extra.end());
      next.insert(next.end(), rest.begin(), rest.end());
      return unify(std::move(s), std::move(next), out);
    }
  }

  // General case: every arrow is matched with an arrow on the other side or
  // absorbed by a hole there; hole pairs share fresh remainders.
  const std::size_t na = a.arrows.size(), nb = b.arrows.size();
  std::vector<std::string> ka, kbs;
  for (const auto& x : a.arrows) ka.push_back(key(x));
  for (const auto& x : b.arrows) kbs.push_back(key(x));
  std::vector<int> choice_a(na), choice_b(nb);  // >= 0 match index, < 0 hole -(i+1)
  std::set<std::string> seen;

  auto emit = [&]() {
    std::vector<std::string> sig;
    for (std::size_t i = 0; i < na; ++i) {
      int c = choice_a[i];
      sig.push_back("a" + ka[i] + (c >= 0 ? "m" + kbs[static_cast<std::size_t>(c)] : "h" + std::to_string(b.holes[-c - 1])));
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (choice_b[j] < 0) sig.push_back("b" + kbs[j] + "h" + std::to_string(a.holes[-choice_b[j] - 1]));
    }
    std::sort(sig.begin(), sig.end());
    std::string joined;
    for (const auto& x : sig) joined += x + "|";
    if (!seen.insert(joined).second) return;

    State t = s;
    std::vector<std::vector<int>> z(a.holes.size(), std::vector<int>(b.holes.size()));
    for (auto& row : z) {
      for (int& v : row) v = t.fresh();
    }
    std::vector<PComp> va(a.holes.size()), vb(b.holes.size());
    for (std::size_t l = 0; l < a.holes.size(); ++l) {
      for (std::size_t r = 0; r < b.holes.size(); ++r) {
        va[l].holes.push_back(z[l][r]);
        vb[r].holes.push_back(z[l][r]);
      }
    }
    std::vector<Eq> next;
    for (std::size_t i = 0; i < na; ++i) {
      int c = choice_a[i];
      if (c >= 0) {
        const PArrow& other = b.arrows[static_cast<std::size_t>(c)];
        next.push_back(comp_eq(a.arrows[i].dom, other.dom));
        next.push_back(par_eq(a.arrows[i].cod, other.cod));
      } else {
        vb[static_cast<std::size_t>(-c - 1)].arrows.push_back(a.arrows[i]);
      }
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (choice_b[j] < 0) va[static_cast<std::size_t>(-choice_b[j] - 1)].arrows.push_back(b.arrows[j]);
    }
    for (std::size_t l = 0; l < a.holes.size(); ++l) {
      if (!bind_hole(t, a.holes[l], va[l])) return;
    }
    for (std::size_t r = 0; r < b.holes.size(); ++r) {
      if (!bind_hole(t, b.holes[r], vb[r])) return;
    }
    next.insert(next.end(), rest.begin(), rest.end());
    unify(std::move(t), std::move(next), out);
  };

  std::vector<char> used(nb, 0);
  std::function<void(std::size_t)> assign_b = [&](std::size_t j) {
    if (j == nb) return emit();
    if (used[j]) {
      choice_b[j] = 0;
      return assign_b(j + 1);
    }
    for (std::size_t l = 0; l < a.holes.size(); ++l) {
      choice_b[j] = -static_cast<int>(l) - 1;
      assign_b(j + 1);
    }
  };
  std::function<void(std::size_t)> assign_a = [&](std::size_t i) {
    if (i == na) return assign_b(0);
    for (std::size_t j = 0; j < nb; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      choice_a[i] = static_cast<int>(j);
      assign_a(i + 1);
      used[j] = 0;
    }
    for (std::size_t r = 0; r < b.holes.size(); ++r) {
      choice_a[i] = -static_cast<int>(r) - 1;
      assign_a(i + 1);
    }
  };
  assign_a(0);
}

void unify_par(State s, PPar a, PPar b, std::vector<Eq> rest, std::vector<State>& out) {
  if (a.comps.size() != b.comps.size()) return;
  if (a.comps.size() == 1) {
    rest.insert(rest.begin(), comp_eq(a.comps[0], b.comps[0]));
    return unify(std::move(s), std::move(rest), out);
  }
  a = resolve(s, a);
  b = resolve(s, b);
  std::vector<std::string> ka, kb;
  for (const auto& c : a.comps) ka.push_back(key(c));
  for (const auto& c : b.comps) kb.push_back(key(c));
  std::vector<std::size_t> perm(b.comps.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::set<std::string> seen;
  do {
    std::vector<std::string> sig;
    for (std::size_t i = 0; i < perm.size(); ++i) sig.push_back(ka[i] + "=" + kb[perm[i]]);
    std::sort(sig.begin(), sig.end());
    std::string joined;
    for (const auto& x : sig) joined += x + "|";
    if (!seen.insert(joined).second) continue;
    std::vector<Eq> next;
    for (std::size_t i = 0; i < perm.size(); ++i) next.push_back(comp_eq(a.comps[i], b.comps[perm[i]]));
    next.insert(next.end(), rest.begin(), rest.end());
    unify(s, std::move(next), out);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void unify(State s, std::vector<Eq> eqs, std::vector<State>& out) {
  if (eqs.empty()) {
    out.push_back(std::move(s));
    return;
  }
  Eq e = std::move(eqs.front());
  eqs.erase(eqs.begin());
  if (e.is_par) return unify_par(std::move(s), std::move(e.pa), std::move(e.pb), std::move(eqs), out);
  unify_comp(std::move(s), std::move(e.a), std::move(e.b), std::move(eqs), out);
}

// ---------------------------------------------------------------------------
// Combinatorics

/// Set partitions of {0..n-1} into nonempty blocks.
void set_partitions(std::size_t n, const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f) {
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == n) return f(blocks);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      blocks[j].push_back(i);
      go(i + 1);
      blocks[j].pop_back();
    }
    blocks.push_back({i});
    go(i + 1);
    blocks.pop_back();
  };
  go(0);
}

// ---------------------------------------------------------------------------
// The search proper

class Searcher {
 public:
  Searcher(const Context& g, const SearchBounds& b, SearchStats* stats) : gamma_(g), bounds_(b), stats_(stats) {}

  std::vector<Derivation> run(const Term& m, const PPar& goal, State s) {
    s.nodes.emplace_back(m, goal, 1);
    s.goals.push_back(Goal{GoalKind::Type, 0, {}, {}, {}});
    for (const auto& x : free_vars(m)) {
      s.goals.push_back(Goal{GoalKind::Close, 0, x, pattern_of(ctx_lookup(gamma_, x)), {}});
    }
    solve(std::move(s));
    std::vector<Derivation> out;
    for (auto& [k, d] : results_) out.push_back(std::move(d));
    return out;
  }

 private:
  const Context& gamma_;
  SearchBounds bounds_;
  SearchStats* stats_;
  std::map<std::string, Derivation> results_;
  bool full_ = false;

  bool within_bounds(const State& s) const {
    for (const auto& n : s.nodes) {
      if (n.depth > bounds_.max_depth) return false;
      if (size_lb(resolve(s, n.goal)) > bounds_.max_type_size) return false;
    }
    return true;
  }

  static void mark_type_done(State& s, int n) { s.nodes[static_cast<std::size_t>(n)].open_type = false; }

  int add_node(State& s, const Term& t, PPar goal, std::size_t depth) {
    s.nodes.emplace_back(t, std::move(goal), depth);
    return static_cast<int>(s.nodes.size()) - 1;
  }

  /// New premise of an abstraction for one arrow of its type.
  void add_lam_premise(State& s, int lam, const PArrow& arrow, std::vector<Goal>& new_goals) {
    const SNode& l = s.nodes[static_cast<std::size_t>(lam)];
    Term body = l.term.body();
    std::string x = l.term.name();
    int p = add_node(s, body, arrow.cod, l.depth + 1);
    s.nodes[static_cast<std::size_t>(lam)].premises.push_back(p);
    new_goals.push_back(Goal{GoalKind::Type, p, {}, {}, {}});
    new_goals.push_back(Goal{GoalKind::Close, p, x, arrow.dom, {}});
  }

  bool close_ready(const State& s, const Goal& g) const {
    std::vector<int> stack{g.node};
    while (!stack.empty()) {
      const SNode& n = s.nodes[static_cast<std::size_t>(stack.back())];
      stack.pop_back();
      if (n.term.is(TermKind::Lam) && n.term.name() == g.var) continue;
      if ((n.open_type || n.open_ext) && is_free_in(g.var, n.term)) return false;
      for (int p : n.premises) stack.push_back(p);
    }
    return true;
  }

  PComp leaves(const State& s, const Goal& g) const {
    PComp out;
    std::vector<int> stack{g.node};
    while (!stack.empty()) {
      const SNode& n = s.nodes[static_cast<std::size_t>(stack.back())];
      stack.pop_back();
      if (n.term.is(TermKind::Lam) && n.term.name() == g.var) continue;
      if (n.term.is(TermKind::Var) && n.term.name() == g.var) {
        const PComp& c = n.goal.comps.front();
        out.arrows.insert(out.arrows.end(), c.arrows.begin(), c.arrows.end());
        out.holes.insert(out.holes.end(), c.holes.begin(), c.holes.end());
      }
      for (int p : n.premises) stack.push_back(p);
    }
    return out;
  }

  /// Turns bound holes of a pending abstraction into premises. Returns true
  /// when something changed.
  bool advance_ext(State& s, std::size_t gi) {
    Goal& g = s.goals[gi];
    bool changed = false;
    std::vector<Goal> new_goals;
    std::vector<int> keep;
    std::vector<PArrow> fresh_arrows;
    for (int h : g.holes) {
      if (!s.bind[h]) {
        keep.push_back(h);
        continue;
      }
      changed = true;
      PComp r = resolve(s, hole_comp(h));
      fresh_arrows.insert(fresh_arrows.end(), r.arrows.begin(), r.arrows.end());
      keep.insert(keep.end(), r.holes.begin(), r.holes.end());
    }
    if (!changed) return false;
    int lam = g.node;
    g.holes = keep;
    if (keep.empty()) {
      s.nodes[static_cast<std::size_t>(lam)].open_ext = false;
      s.goals.erase(s.goals.begin() + static_cast<long>(gi));
    }
    for (const auto& a : fresh_arrows) add_lam_premise(s, lam, a, new_goals);
    s.goals.insert(s.goals.end(), new_goals.begin(), new_goals.end());
    return true;
  }

  void solve(State s) {
    while (true) {
      if (full_) return;
      if (stats_) ++stats_->states;
      if (!within_bounds(s)) return;

      bool progressed = false;
      for (std::size_t i = 0; i < s.goals.size(); ++i) {
        if (s.goals[i].kind == GoalKind::LamExt && advance_ext(s, i)) {
          progressed = true;
          break;
        }
      }
      if (progressed) continue;

      for (std::size_t i = 0; i < s.goals.size(); ++i) {
        const Goal& g = s.goals[i];
        if (g.kind != GoalKind::Close || !close_ready(s, g)) continue;
        PComp l = leaves(s, g);
        PComp dom = g.dom;
        State t = s;
        t.goals.erase(t.goals.begin() + static_cast<long>(i));
        std::vector<State> branches;
        unify(std::move(t), {comp_eq(dom, l)}, branches);
        for (auto& b : branches) solve(std::move(b));
        return;
      }

      for (std::size_t i = 0; i < s.goals.size(); ++i) {
        if (s.goals[i].kind == GoalKind::Type) return expand_type(std::move(s), i);
      }

      for (std::size_t i = 0; i < s.goals.size(); ++i) {
        if (s.goals[i].kind == GoalKind::LamExt) return extend_lambda(std::move(s), i);
      }

      if (!s.goals.empty()) throw std::logic_error("search: stuck goals");
      return finish(s);
    }
  }

  /// An abstraction whose type still contains an unknown hole h: either
  /// h = 1, or h holds one more arrow d -o (b1 % ... % ba) and a remainder.
  void extend_lambda(State s, std::size_t gi) {
    int h = s.goals[gi].holes.front();
    {
      State t = s;
      t.bind[h] = PComp{};
      solve(std::move(t));
    }
    for (std::size_t a = 1; a <= bounds_.max_k; ++a) {
      State t = s;
      PArrow arr;
      arr.dom = hole_comp(t.fresh());
      for (std::size_t i = 0; i < a; ++i) arr.cod.comps.push_back(hole_comp(t.fresh()));
      PComp v;
      v.arrows.push_back(std::move(arr));
      v.holes.push_back(t.fresh());
      t.bind[h] = std::move(v);
      solve(std::move(t));
      if (full_) return;
    }
  }

  void expand_type(State s, std::size_t gi) {
    int ni = s.goals[gi].node;
    s.goals.erase(s.goals.begin() + static_cast<long>(gi));
    auto node = [&](State& st) -> SNode& { return st.nodes[static_cast<std::size_t>(ni)]; };
    const Term m = node(s).term;
    PPar goal = resolve(s, node(s).goal);
    node(s).goal = goal;
    mark_type_done(s, ni);
    auto insert_goals = [&](State& st, std::vector<Goal> gs) {
      st.goals.insert(st.goals.begin() + static_cast<long>(gi), gs.begin(), gs.end());
    };

    switch (m.kind()) {
      case TermKind::Var: {
        if (goal.comps.size() != 1) return;
        node(s).rule = DRule::Ax;
        return solve(std::move(s));
      }
      case TermKind::Lam: {
        if (goal.comps.size() != 1) return;
        node(s).rule = DRule::Lam;
        PComp c = goal.comps.front();
        std::vector<Goal> gs;
        for (const auto& a : c.arrows) add_lam_premise(s, ni, a, gs);
        if (!c.holes.empty()) {
          node(s).open_ext = true;
          gs.push_back(Goal{GoalKind::LamExt, ni, {}, {}, c.holes});
        }
        // Type goals keep their place; closing goals go last.
        std::vector<Goal> types, rest;
        for (auto& g : gs) (g.kind == GoalKind::Type ? types : rest).push_back(std::move(g));
        insert_goals(s, types);
        s.goals.insert(s.goals.end(), rest.begin(), rest.end());
        return solve(std::move(s));
      }
      case TermKind::Sum: {
        for (DRule side : {DRule::PlusL, DRule::PlusR}) {
          State t = s;
          node(t).rule = side;
          int p = add_node(t, side == DRule::PlusL ? m.left() : m.right(), goal, node(t).depth + 1);
          node(t).premises.push_back(p);
          insert_goals(t, {Goal{GoalKind::Type, p, {}, {}, {}}});
          solve(std::move(t));
          if (full_) return;
        }
        return;
      }
      case TermKind::Par: {
        std::size_t n = goal.comps.size();
        if (n < 2) return;
        std::vector<std::string> keys;
        for (const auto& c : goal.comps) keys.push_back(key(c));
        std::set<std::string> seen;
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
          PPar l, r;
          std::vector<std::string> kl, kr;
          for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
              l.comps.push_back(goal.comps[i]);
              kl.push_back(keys[i]);
            } else {
              r.comps.push_back(goal.comps[i]);
              kr.push_back(keys[i]);
            }
          }
          std::sort(kl.begin(), kl.end());
          std::sort(kr.begin(), kr.end());
          std::string sig;
          for (const auto& k : kl) sig += k + ",";
          sig += "|";
          for (const auto& k : kr) sig += k + ",";
          if (!seen.insert(sig).second) continue;
          State t = s;
          node(t).rule = DRule::Par;
          std::size_t d = node(t).depth + 1;
          int pl = add_node(t, m.left(), l, d);
          int pr = add_node(t, m.right(), r, d);
          node(t).premises = {pl, pr};
          insert_goals(t, {Goal{GoalKind::Type, pl, {}, {}, {}}, Goal{GoalKind::Type, pr, {}, {}, {}}});
          solve(std::move(t));
          if (full_) return;
        }
        return;
      }
      case TermKind::App:
        return expand_app(std::move(s), gi, ni, goal);
    }
  }

  void expand_app(State s, std::size_t gi, int ni, const PPar& goal) {
    const Term m = s.nodes[static_cast<std::size_t>(ni)].term;
    bool fun_value = is_value(m.left());
    bool arg_value = is_value(m.right());
    std::size_t n = goal.comps.size();
    std::vector<std::string> keys;
    for (const auto& c : goal.comps) keys.push_back(key(c));
    std::set<std::string> seen;

    set_partitions(n, [&](const std::vector<std::vector<std::size_t>>& cells) {
      if (full_) return;
      std::vector<std::string> cell_keys;
      for (const auto& c : cells) {
        std::vector<std::string> ks;
        for (std::size_t i : c) ks.push_back(keys[i]);
        std::sort(ks.begin(), ks.end());
        std::string k = "<";
        for (const auto& x : ks) k += x + ",";
        cell_keys.push_back(k + ">");
      }
      set_partitions(cells.size(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
        if (full_) return;
        std::size_t k = blocks.size();
        if (k > bounds_.max_k) return;
        if (fun_value && k != 1) return;
        for (const auto& b : blocks) {
          if (b.size() > bounds_.max_k) return;
          if (arg_value && b.size() != 1) return;
        }
        std::vector<std::string> bks;
        for (const auto& b : blocks) {
          std::vector<std::string> ks;
          for (std::size_t c : b) ks.push_back(cell_keys[c]);
          std::sort(ks.begin(), ks.end());
          std::string bk = "{";
          for (const auto& x : ks) bk += x;
          bks.push_back(bk + "}");
        }
        std::sort(bks.begin(), bks.end());
        std::string sig;
        for (const auto& x : bks) sig += x;
        if (!seen.insert(sig).second) return;

        State t = s;
        SNode& nd = t.nodes[static_cast<std::size_t>(ni)];
        nd.rule = DRule::App;
        std::size_t depth = nd.depth + 1;
        PPar principal;
        std::vector<PPar> args;
        for (const auto& b : blocks) {
          PComp block;
          PPar arg;
          for (std::size_t c : b) {
            int d = t.fresh();
            PPar cell;
            for (std::size_t i : cells[c]) cell.comps.push_back(goal.comps[i]);
            block.arrows.push_back(PArrow{hole_comp(d), std::move(cell)});
            arg.comps.push_back(hole_comp(d));
          }
          principal.comps.push_back(std::move(block));
          args.push_back(std::move(arg));
        }
        std::vector<Goal> gs;
        std::vector<int> premises;
        int p = add_node(t, m.left(), principal, depth);
        premises.push_back(p);
        gs.push_back(Goal{GoalKind::Type, p, {}, {}, {}});
        for (auto& a : args) {
          int q = add_node(t, m.right(), std::move(a), depth);
          premises.push_back(q);
          gs.push_back(Goal{GoalKind::Type, q, {}, {}, {}});
        }
        t.nodes[static_cast<std::size_t>(ni)].premises = premises;
        t.goals.insert(t.goals.begin() + static_cast<long>(gi), gs.begin(), gs.end());
        solve(std::move(t));
      });
    });
  }

  // ---- Finalization -------------------------------------------------------

  static CompType ground(const PComp& c);

  static ParType ground(const PPar& p) {
    ParType t;
    for (const auto& c : p.comps) t.comps.push_back(ground(c));
    t.normalize();
    return t;
  }

  Derivation build(const State& s, int ni) const {
    const SNode& n = s.nodes[static_cast<std::size_t>(ni)];
    const Term& m = n.term;
    switch (n.rule) {
      case DRule::Ax:
        return make_ax(m.name(), ground(resolve(s, n.goal.comps.front())));
      case DRule::Lam: {
        std::vector<Derivation> ps;
        for (int p : n.premises) ps.push_back(build(s, p));
        return make_lam(m.name(), m.body(), std::move(ps));
      }
      case DRule::App: {
        Derivation principal = build(s, n.premises[0]);
        PPar pg = resolve(s, s.nodes[static_cast<std::size_t>(n.premises[0])].goal);
        std::vector<Derivation> args;
        std::vector<CompType> comps;
        for (std::size_t i = 1; i < n.premises.size(); ++i) {
          args.push_back(build(s, n.premises[i]));
          comps.push_back(ground(pg.comps[i - 1]));
        }
        return make_app_by_value(std::move(principal), std::move(args), comps);
      }
      case DRule::PlusL:
        return make_plus(DRule::PlusL, build(s, n.premises[0]), m.right());
      case DRule::PlusR:
        return make_plus(DRule::PlusR, build(s, n.premises[0]), m.left());
      case DRule::Par:
        return make_par(build(s, n.premises[0]), build(s, n.premises[1]));
    }
    throw std::logic_error("search: unknown rule");
  }

  void finish(const State& s) {
    Derivation d = build(s, 0);
    Judgment j = check(d);
    if (j.ctx != gamma_) throw std::logic_error("search: context mismatch for " + print_judgment(j));
    ParType want = ground(resolve(s, s.nodes[0].goal));
    if (!(j.type == want)) throw std::logic_error("search: type mismatch for " + print_judgment(j));
    std::string fp = fingerprint(d);
    if (results_.count(fp)) return;
    results_.emplace(std::move(fp), std::move(d));
    if (results_.size() >= bounds_.max_results) {
      full_ = true;
      if (stats_) stats_->truncated = true;
    }
  }
};

CompType Searcher::ground(const PComp& c) {
  CompType t;
  for (const auto& a : c.arrows) t.arrows.push_back(Arrow{ground(a.dom), ground(a.cod)});
  t.normalize();
  return t;
}

std::vector<Derivation> sorted_by_measure(std::vector<Derivation> ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Derivation& a, const Derivation& b) { return measure(a) < measure(b); });
  return ds;
}

}  // namespace

std::vector<Derivation> search(const Context& g, const Term& m, const ParType& a, const SearchBounds& b,
                               SearchStats* stats) {
  if (a.comps.empty()) return {};
  if (type_size(a) > b.max_type_size) return {};
  Searcher searcher(g, b, stats);
  return sorted_by_measure(searcher.run(m, pattern_of(a), State{}));
}

std::vector<Derivation> search_any(const Context& g, const Term& m, const SearchBounds& b, SearchStats* stats) {
  std::vector<Derivation> out;
  std::set<std::string> seen;
  for (std::size_t k = 1; k <= b.max_k; ++k) {
    State s;
    PPar goal;
    for (std::size_t i = 0; i < k; ++i) goal.comps.push_back(hole_comp(s.fresh()));
    SearchBounds left = b;
    left.max_results = b.max_results - out.size();
    Searcher searcher(g, left, stats);
    for (auto& d : searcher.run(m, goal, std::move(s))) {
      if (seen.insert(fingerprint(d)).second) out.push_back(std::move(d));
    }
    if (out.size() >= b.max_results) break;
  }
  return sorted_by_measure(std::move(out));
}

std::optional<Derivation> typable(const Term& m, const SearchBounds& b) {
  if (!is_closed(m)) throw TermError("typability is only searched for closed terms");
  std::optional<Derivation> best;
  auto better = [](const Derivation& a, const Derivation& c) {
    bool ua = a.type() == ParType::units(a.type().arity());
    bool uc = c.type() == ParType::units(c.type().arity());
    if (ua != uc) return ua;
    return measure(a) < measure(c);
  };
  for (auto& d : search_any(Context{}, m, b)) {
    if (!best || better(d, *best)) best = std::move(d);
  }
  return best;
}

std::vector<std::pair<Derivation, std::size_t>> unit_typings(const Term& m, std::size_t k, const SearchBounds& b) {
  if (!is_closed(m)) throw TermError("unit typings are only searched for closed terms");
  if (k == 0) throw std::invalid_argument("unit typings need k >= 1");
  std::vector<std::pair<Derivation, std::size_t>> out;
  for (auto& d : search(Context{}, m, ParType::units(k), b)) {
    std::size_t w = measure(d);
    out.emplace_back(std::move(d), w);
  }
  return out;
}

}  // namespace llv
