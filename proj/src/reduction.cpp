#include "llv/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace llv {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::BetaV:
      return "BetaV";
    case Rule::PlusL:
      return "PlusL";
    case Rule::PlusR:
      return "PlusR";
    case Rule::ParAppL:
      return "ParAppL";
    case Rule::ParAppR:
      return "ParAppR";
  }
  return "?";
}

Rule rule_from_name(const std::string& s) {
  for (Rule r : {Rule::BetaV, Rule::PlusL, Rule::PlusR, Rule::ParAppL, Rule::ParAppR}) {
    if (rule_name(r) == s) return r;
  }
  throw std::invalid_argument("unknown rule '" + s + "'");
}

const Term& subterm_at(const Term& m, const Path& path) {
  const Term* cur = &m;
  for (int c : path) {
    if (cur->is(TermKind::Var) || (cur->is(TermKind::Lam) && c != 0) || c < 0 || c > 1) {
      throw TermError("path does not address a subterm");
    }
    cur = &cur->child(static_cast<std::size_t>(c));
  }
  return *cur;
}

namespace {

Term rebuild(const Term& m, const Path& path, std::size_t i, const Term& replacement) {
  if (i == path.size()) return replacement;
  int c = path[i];
  switch (m.kind()) {
    case TermKind::App:
      return c == 0 ? Term::app(rebuild(m.left(), path, i + 1, replacement), m.right())
                    : Term::app(m.left(), rebuild(m.right(), path, i + 1, replacement));
    case TermKind::Sum:
      return c == 0 ? Term::sum(rebuild(m.left(), path, i + 1, replacement), m.right())
                    : Term::sum(m.left(), rebuild(m.right(), path, i + 1, replacement));
    case TermKind::Par:
      return c == 0 ? Term::par(rebuild(m.left(), path, i + 1, replacement), m.right())
                    : Term::par(m.left(), rebuild(m.right(), path, i + 1, replacement));
    case TermKind::Lam:
      return Term::lam(m.name(), rebuild(m.body(), path, i + 1, replacement));
    case TermKind::Var:
      break;
  }
  throw TermError("path does not address a subterm");
}

// Collects local contracta; the caller rebuilds them in place.
void step_rec(const Term& m, Path& path, std::vector<std::pair<StepLabel, Term>>& out) {
  switch (m.kind()) {
    case TermKind::Var:
    case TermKind::Lam:
      return;
    case TermKind::Sum:
      out.push_back({StepLabel{Rule::PlusL, path}, m.left()});
      out.push_back({StepLabel{Rule::PlusR, path}, m.right()});
      return;
    case TermKind::Par: {
      path.push_back(0);
      step_rec(m.left(), path, out);
      path.back() = 1;
      step_rec(m.right(), path, out);
      path.pop_back();
      return;
    }
    case TermKind::App: {
      const Term& f = m.left();
      const Term& a = m.right();
      if (f.is(TermKind::Par)) {
        out.push_back({StepLabel{Rule::ParAppL, path},
                       Term::par(Term::app(f.left(), a), Term::app(f.right(), a))});
        return;
      }
      if (is_value(f)) {
        if (a.is(TermKind::Par)) {
          out.push_back({StepLabel{Rule::ParAppR, path},
                         Term::par(Term::app(f, a.left()), Term::app(f, a.right()))});
          return;
        }
        if (f.is(TermKind::Lam) && is_value(a)) {
          out.push_back({StepLabel{Rule::BetaV, path}, substitute(f.body(), f.name(), a)});
          return;
        }
        path.push_back(1);
        step_rec(a, path, out);
        path.pop_back();
        return;
      }
      path.push_back(0);
      step_rec(f, path, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace

Term replace_at(const Term& m, const Path& path, const Term& replacement) { return rebuild(m, path, 0, replacement); }

std::vector<std::string> context_rules(const Term& m, const Path& path) {
  std::vector<std::string> out;
  const Term* cur = &m;
  for (int c : path) {
    if (cur->is(TermKind::App)) {
      out.push_back(c == 0 ? "CtxAppL" : "CtxAppR");
    } else if (cur->is(TermKind::Par)) {
      out.push_back(c == 0 ? "CtxParL" : "CtxParR");
    } else {
      throw TermError("path leaves the evaluation contexts");
    }
    cur = &cur->child(static_cast<std::size_t>(c));
  }
  return out;
}

std::vector<std::pair<StepLabel, Term>> step(const Term& m) {
  std::vector<std::pair<StepLabel, Term>> local;
  Path path;
  step_rec(m, path, local);
  for (auto& [label, t] : local) t = replace_at(m, label.path, t);
  return local;
}

bool is_normal(const Term& m) { return step(m).empty(); }

std::optional<std::vector<Term>> parallel_values(const Term& m) {
  if (is_value(m)) return std::vector<Term>{m};
  if (!m.is(TermKind::Par)) return std::nullopt;
  auto l = parallel_values(m.left());
  if (!l) return std::nullopt;
  auto r = parallel_values(m.right());
  if (!r) return std::nullopt;
  l->insert(l->end(), r->begin(), r->end());
  return l;
}

Term apply_step(const Term& m, const StepLabel& label) {
  for (auto& [l, t] : step(m)) {
    if (l == label) return t;
  }
  throw TermError("no " + rule_name(label.rule) + " redex at the given path");
}

std::optional<std::size_t> ReductionGraph::find(const Term& t) const {
  std::string key = canonical_key(t);
  auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(key, std::size_t{0}));
  if (it != index_.end() && it->first == key) return it->second;
  return std::nullopt;
}

std::vector<std::size_t> ReductionGraph::normal_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].normal) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ReductionGraph::successors(std::size_t n) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges) {
    if (e.src == n) out.push_back(e.dst);
  }
  return out;
}

ReductionGraph explore(const Term& m, std::size_t max_steps, std::size_t max_states) {
  ReductionGraph g;
  std::map<std::string, std::size_t> ids;
  auto add = [&](const Term& t, std::size_t layer) -> std::optional<std::size_t> {
    std::string key = canonical_key(t);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (g.nodes.size() >= max_states) return std::nullopt;
    ids.emplace(key, g.nodes.size());
    g.nodes.push_back({t, layer, false, false});
    return g.nodes.size() - 1;
  };
  add(m, 0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t n = frontier.front();
    frontier.pop_front();
    auto reducts = step(g.nodes[n].term);
    if (reducts.empty()) {
      g.nodes[n].normal = true;
      g.nodes[n].expanded = true;
      continue;
    }
    if (g.nodes[n].layer >= max_steps) {
      g.fuel_hit = true;
      continue;
    }
    bool complete = true;
    for (auto& [label, t] : reducts) {
      std::size_t before = g.nodes.size();
      auto id = add(t, g.nodes[n].layer + 1);
      if (!id) {
        complete = false;
        g.fuel_hit = true;
        continue;
      }
      g.edges.push_back({n, label, *id});
      if (g.nodes.size() > before) frontier.push_back(*id);
    }
    g.nodes[n].expanded = complete;
  }
  g.exhausted = std::all_of(g.nodes.begin(), g.nodes.end(), [](const auto& nd) { return nd.expanded; });
  g.index_.reserve(ids.size());
  for (auto& kv : ids) g.index_.emplace_back(kv.first, kv.second);
  return g;
}

std::string verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Converges:
      return "Converges";
    case Verdict::Kind::Diverges:
      return "Diverges";
    case Verdict::Kind::Unknown:
      return "Unknown";
  }
  return "?";
}

Verdict converges(const Term& m, std::size_t max_steps, std::size_t max_states) {
  if (!is_closed(m)) throw TermError("convergence is only defined for closed terms");
  ReductionGraph g = explore(m, max_steps, max_states);
  Verdict v;
  for (std::size_t n : g.normal_nodes()) {
    if (parallel_values(g.nodes[n].term)) v.normal_forms.emplace_back(g.nodes[n].term, g.nodes[n].layer);
  }
  if (!v.normal_forms.empty()) {
    v.kind = Verdict::Kind::Converges;
  } else if (g.exhausted) {
    v.kind = Verdict::Kind::Diverges;
  } else {
    v.kind = Verdict::Kind::Unknown;
  }
  return v;
}

std::set<std::size_t> reduction_lengths(const ReductionGraph& g, std::size_t k) {
  if (!g.exhausted) throw std::runtime_error("reduction_lengths needs an exhausted graph");
  std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (const auto& e : g.edges) {
    succ[e.src].push_back(e.dst);
    pred[e.dst].push_back(e.src);
  }
  // Nodes from which some target is reachable.
  std::vector<char> live(n, 0);
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < n; ++i) {
    auto vals = g.nodes[i].normal ? parallel_values(g.nodes[i].term) : std::nullopt;
    if (vals && vals->size() == k) {
      live[i] = 1;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop_front();
    for (std::size_t p : pred[v]) {
      if (!live[p]) {
        live[p] = 1;
        work.push_back(p);
      }
    }
  }
  if (!live[0]) return {};
  // Memoized path lengths over the live subgraph; a back edge means a cycle.
  std::vector<int> state(n, 0);
  std::vector<std::set<std::size_t>> memo(n);
  auto visit = [&](auto&& self, std::size_t v) -> const std::set<std::size_t>& {
    if (state[v] == 2) return memo[v];
    if (state[v] == 1) throw std::runtime_error("cycle among converging states: infinitely many reduction lengths");
    state[v] = 1;
    std::set<std::size_t> out;
    auto vals = g.nodes[v].normal ? parallel_values(g.nodes[v].term) : std::nullopt;
    if (vals && vals->size() == k) out.insert(0);
    for (std::size_t s : succ[v]) {
      if (!live[s]) continue;
      for (std::size_t l : self(self, s)) out.insert(l + 1);
    }
    memo[v] = std::move(out);
    state[v] = 2;
    return memo[v];
  };
  return visit(visit, 0);
}

std::set<std::string> normal_form_keys(const ReductionGraph& g) {
  std::set<std::string> out;
  for (std::size_t n : g.normal_nodes()) out.insert(canonical_key(g.nodes[n].term));
  return out;
}

}  // namespace llv
