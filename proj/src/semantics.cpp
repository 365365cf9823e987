#include "llv/semantics.hpp"

#include <algorithm>
#include <functional>

#include "llv/syntax.hpp"

namespace llv {

bool InterpApprox::contains(const ParType& t) const { return std::find(types.begin(), types.end(), t) != types.end(); }

bool InterpApprox::subset_of(const InterpApprox& other) const {
  return std::all_of(types.begin(), types.end(), [&](const ParType& t) { return other.contains(t); });
}

InterpApprox interp(const Term& m, std::size_t type_bound, const SearchBounds& b) {
  if (!is_closed(m)) throw TermError("the interpretation is defined for closed terms");
  InterpApprox out{m, type_bound, b, {}};
  SearchBounds one = b;
  one.max_results = 1;
  for (const auto& t : enumerate_types(type_bound)) {
    if (!search(Context{}, m, t, one).empty()) out.types.push_back(t);
  }
  return out;
}

SearchBounds interp_search_defaults() { return SearchBounds{80, 64, 3, 1}; }

bool is_ogre_type(const ParType& t) {
  if (!t.is_comp()) return false;
  return std::all_of(t.comps[0].arrows.begin(), t.comps[0].arrows.end(),
                     [](const Arrow& a) { return a.dom.is_one() && is_ogre_type(a.cod); });
}

Term ogre() {
  Term dstar = parse_term("\\x y.x x");
  return Term::app(dstar, dstar);
}

bool check_ogre_unfolding() {
  Term y = ogre();
  auto r = step(y);
  return r.size() == 1 && r[0].first.rule == Rule::BetaV && r[0].first.path.empty() &&
         alpha_eq(r[0].second, Term::lam("y", y));
}

std::vector<Term> pool_from_corpus(const Corpus& c) {
  std::vector<Term> out;
  for (const auto& e : c.entries()) {
    if (!is_closed(e.second)) throw TermError("pool entry " + e.first + " is open");
    out.push_back(e.second);
  }
  return out;
}

std::vector<Term> default_pool() {
  static const std::vector<Term> pool = pool_from_corpus(parse_corpus(builtin_pool_text()));
  return pool;
}

SeparationReport obs_check(const Term& m, const Term& n, const ObsParams& p) {
  if (!is_closed(m) || !is_closed(n)) throw TermError("observational checks need closed terms");
  SeparationReport r{m, n, p.max_args, p.pool, 0, false, {}, true};
  std::vector<Term> args;
  std::function<bool(std::size_t)> go = [&](std::size_t len) {
    if (args.size() == len) {
      ++r.vectors_tried;
      Term ma = m, na = n;
      for (const auto& a : args) {
        ma = Term::app(ma, a);
        na = Term::app(na, a);
      }
      Verdict vm = converges(ma, p.max_steps, p.max_states);
      Verdict vn = converges(na, p.max_steps, p.max_states);
      if (vm.converges() && vn.diverges()) {
        r.separated = true;
        r.m_converges = true;
      } else if (p.both_directions && vn.converges() && vm.diverges()) {
        r.separated = true;
        r.m_converges = false;
      }
      if (r.separated) r.witness = args;
      return r.separated;
    }
    for (const auto& a : p.pool) {
      args.push_back(a);
      if (go(len)) return true;
      args.pop_back();
    }
    return false;
  };
  for (std::size_t len = 0; len <= p.max_args; ++len) {
    if (go(len)) break;
  }
  return r;
}

AdequacyReport adequacy_check(const InterpApprox& im, const InterpApprox& in, const ObsParams& p) {
  AdequacyReport out;
  for (const auto& t : im.types) {
    if (!in.contains(t)) {
      out.missing = t;
      break;
    }
  }
  out.inclusion = !out.missing;
  if (!out.inclusion) return out;
  ObsParams directed = p;
  directed.both_directions = false;
  out.separation = obs_check(im.subject, in.subject, directed);
  out.holds = !out.separation->separated;
  return out;
}

std::string describe(const SeparationReport& r) {
  if (!r.separated) {
    return "not separated within bounds (" + std::to_string(r.vectors_tried) + " argument vectors, pool of " +
           std::to_string(r.pool.size()) + ", up to " + std::to_string(r.max_args) + " arguments)";
  }
  std::string s = "separated by [";
  for (std::size_t i = 0; i < r.witness.size(); ++i) s += (i ? ", " : "") + print_term(r.witness[i]);
  s += "]: ";
  s += r.m_converges ? "first converges, second diverges" : "second converges, first diverges";
  return s;
}

}  // namespace llv
