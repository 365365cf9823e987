#include "llv/suite.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "llv/enumerate.hpp"
#include "llv/reduction.hpp"
#include "llv/search.hpp"
#include "llv/semantics.hpp"
#include "llv/transform.hpp"

namespace llv {

namespace {

/// Accumulates a verdict: the first failed requirement is kept, notes
/// summarise what was checked.
struct Outcome {
  bool ok = true;
  std::string failure;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      failure = what;
    }
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

using CriterionFn = std::function<Outcome(const SuiteOptions&)>;

struct Criterion {
  std::string id;
  std::string title;
  CriterionFn run;
};

Term lit(const char* s) { return parse_term(s); }

std::string set_string(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ", ") + std::to_string(*it);
  return out + "}";
}

SearchBounds pinned(const Corpus& c, const std::string& name, SearchBounds b, const char* size_key = "type-size") {
  b.max_type_size = static_cast<std::size_t>(c.bound(name, size_key, static_cast<long>(b.max_type_size)));
  b.max_depth = static_cast<std::size_t>(c.bound(name, "depth", static_cast<long>(b.max_depth)));
  b.max_k = static_cast<std::size_t>(c.bound(name, "max-k", static_cast<long>(b.max_k)));
  return b;
}

std::size_t pinned_fuel(const Corpus& c, const std::string& name) {
  return static_cast<std::size_t>(c.bound(name, "fuel", 200));
}

std::size_t pinned_states(const Corpus& c, const std::string& name) {
  return static_cast<std::size_t>(c.bound(name, "states", 10000));
}

bool is_parallel_of_values(const Term& t) { return parallel_values(t).has_value(); }

// ---------------------------------------------------------------------------
// Shared checks

/// Subject reduction and expansion on every unit typing of the enumerated
/// closed terms up to max_size.
void measure_clock(std::size_t max_size, const SearchBounds& b, Outcome& out) {
  std::size_t typed = 0, guided = 0, expanded = 0;
  std::map<std::string, std::vector<std::vector<std::pair<Derivation, std::size_t>>>> memo;
  auto typings = [&](const Term& t) -> const std::vector<std::vector<std::pair<Derivation, std::size_t>>>& {
    auto key = canonical_key(t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<std::pair<Derivation, std::size_t>>> by_k;
    for (std::size_t k = 1; k <= b.max_k; ++k) by_k.push_back(unit_typings(t, k, b));
    return memo.emplace(key, std::move(by_k)).first->second;
  };
  for_each_term(TermEnumerator{max_size, 0, true}, [&](const Term& m) {
    if (!out.ok) return;
    const auto& by_k = typings(m);
    auto reducts = step(m);
    for (std::size_t k = 1; k <= by_k.size(); ++k) {
      for (const auto& [pi, mu] : by_k[k - 1]) {
        ++typed;
        std::string where = print_term(m) + " : " + print_type(pi.type());
        out.require(measure(pi) == mu, where + ": reported measure differs");
        if (reducts.empty()) {
          out.require(mu == 0, where + ": normal term with nonzero measure");
          continue;
        }
        GuidedStep g = guided_step(pi);
        Judgment j = check(g.derivation);
        ++guided;
        out.require(alpha_eq(g.result, apply_step(m, g.label)), where + ": guided step does not replay");
        out.require(j.ctx.empty() && j.type == pi.type() && alpha_eq(j.subject, g.result),
                    where + ": reduct judgment " + print_judgment(j));
        out.require(measure(g.derivation) + 1 == mu, where + ": guided step changed the measure by " +
                                                         std::to_string(mu) + " -> " +
                                                         std::to_string(measure(g.derivation)));
        Derivation back = expand_step(g.derivation, m, g.label);
        ++expanded;
        out.require(same_judgment(check(back), pi.judgment), where + ": round trip changed the judgment");
        out.require(measure(back) == mu, where + ": round trip changed the measure");
      }
    }
    for (const auto& [label, n] : reducts) {
      const auto& nk = typings(n);
      for (std::size_t k = 1; k <= nk.size(); ++k) {
        for (const auto& [rho, nu] : nk[k - 1]) {
          Derivation e = expand_step(rho, m, label);
          Judgment j = check(e);
          ++expanded;
          std::string where = print_term(n) + " : " + print_type(rho.type()) + " expanded to " + print_term(m);
          out.require(j.ctx.empty() && j.type == rho.type() && alpha_eq(j.subject, m), where + ": wrong judgment");
          out.require(measure(e) == nu + 1, where + ": expansion changed the measure by other than 1");
        }
      }
    }
  });
  out.note(std::to_string(typed) + " typings, " + std::to_string(guided) + " guided steps, " +
           std::to_string(expanded) + " expansions");
}

void progress(std::size_t max_size, Outcome& out) {
  std::size_t n = 0;
  for_each_term(TermEnumerator{max_size, 0, true}, [&](const Term& m) {
    ++n;
    out.require(is_parallel_of_values(m) || !step(m).empty(), print_term(m) + " is stuck");
    out.require(!(is_parallel_of_values(m) && !step(m).empty()), print_term(m) + " is a normal form with a reduct");
  });
  out.note(std::to_string(n) + " closed terms up to size " + std::to_string(max_size) + " make progress");
}

void value_sort(std::size_t max_size, Outcome& out) {
  std::size_t values = 0, derivations = 0;
  SearchBounds b{4, 16, 3, 20};
  for_each_term(TermEnumerator{max_size, 0, true}, [&](const Term& v) {
    if (!is_value(v)) return;
    ++values;
    for (const auto& d : search_any(Context{}, v, b)) {
      ++derivations;
      out.require(d.type().is_comp(), print_term(v) + " : " + print_type(d.type()) + " is not computational");
    }
  });
  out.require(derivations > 0, "no value derivations searched");
  out.note(std::to_string(derivations) + " derivations of " + std::to_string(values) + " closed values");
}

// ---------------------------------------------------------------------------
// Acceptance criteria

Outcome worked(const SuiteOptions& o) {
  Outcome out;
  Derivation pi = derivation_from_json(json::parse(o.worked));
  Judgment j = check(pi);
  Term subject = lit("(\\x.x x) ((\\x.x) || \\x y.(\\x.x x) (\\x.x x))");
  out.require(j.ctx.empty() && alpha_eq(j.subject, subject) && j.type == ParType::units(2),
              "judgment is " + print_judgment(j));
  out.require(measure(pi) == 5, "measure is " + std::to_string(measure(pi)));
  Trace t = guided_run(pi);
  validate_trace(t);
  out.require(t.length() == 5, "guided run has " + std::to_string(t.length()) + " steps");
  out.require(alpha_eq(t.end(), lit("(\\x.x) || \\y.(\\x.x x) (\\x.x x)")), "guided run ends in " + print_term(t.end()));
  GuidedStep g = guided_step(pi);
  Judgment jp = check(g.derivation);
  out.require(alpha_eq(g.result, lit("(\\x.x x) (\\x.x) || (\\x.x x) (\\x y.(\\x.x x) (\\x.x x))")),
              "first step leads to " + print_term(g.result));
  out.require(jp.ctx.empty() && jp.type == j.type && alpha_eq(jp.subject, g.result), "reduct judgment " + print_judgment(jp));
  out.require(measure(g.derivation) == 4, "|pi'| is " + std::to_string(measure(g.derivation)));
  out.note("|pi| = 5, guided run of 5 steps to " + print_term(t.end()) + ", |pi'| = 4");
  return out;
}

Outcome exact_length(const SuiteOptions& o) {
  Outcome out;
  std::size_t instances = 0;
  for (const auto& [name, m] : o.corpus.entries()) {
    long k = o.corpus.bound(name, "k", 0);
    if (k <= 0) continue;
    ++instances;
    SearchBounds b = pinned(o.corpus, name, SearchBounds{});
    ReductionGraph g = explore(m, pinned_fuel(o.corpus, name), pinned_states(o.corpus, name));
    out.require(g.exhausted, name + ": reduction graph not exhausted");
    if (!g.exhausted) continue;
    std::set<std::size_t> lengths = reduction_lengths(g, static_cast<std::size_t>(k));
    std::set<std::size_t> measures;
    for (const auto& [d, mu] : unit_typings(m, static_cast<std::size_t>(k), b)) {
      measures.insert(mu);
      Trace tr = guided_run(d);
      auto vals = parallel_values(tr.end());
      out.require(tr.length() == mu, name + ": a guided run of length " + std::to_string(tr.length()) +
                                          " for measure " + std::to_string(mu));
      out.require(vals && vals->size() == static_cast<std::size_t>(k), name + ": guided run ends in " + print_term(tr.end()));
    }
    out.require(!lengths.empty(), name + ": no reduction to " + std::to_string(k) + " values");
    out.require(measures == lengths, name + ": measures " + set_string(measures) + " but lengths " + set_string(lengths));
    out.note(name + " k=" + std::to_string(k) + " " + set_string(measures));
  }
  out.require(instances > 0, "no corpus entry carries a k bound");
  return out;
}

Outcome typability(const SuiteOptions& o) {
  Outcome out;
  for (const char* name : {"Omega", "LamOmegaPar", "FSp"}) {
    const Term& m = o.corpus.at(name);
    SearchBounds b = pinned(o.corpus, name, SearchBounds{});
    SearchStats st;
    auto ds = search_any(Context{}, m, b, &st);
    out.require(ds.empty(), std::string(name) + " is typable with " + (ds.empty() ? "" : print_type(ds[0].type())));
    ReductionGraph g = explore(m, pinned_fuel(o.corpus, name), pinned_states(o.corpus, name));
    out.require(g.exhausted && g.normal_nodes().empty(), std::string(name) + " is not proven divergent");
    out.note(std::string(name) + " untypable and divergent (" + std::to_string(g.nodes.size()) + " states)");
  }
  const std::vector<std::pair<const char*, std::vector<const char*>>> typable = {
      {"LamOmega", {"1"}},
      {"LamOmegaSum", {"1"}},
      {"IParLamOmega", {"(1 -o 1) % 1", "((1 -o 1) * ((1 -o 1) -o (1 -o 1))) % 1"}},
      {"YstarUnfold", {"1", "(1 -o 1) * (1 -o (1 -o 1))"}},
  };
  for (const auto& [name, types] : typable) {
    const Term& m = o.corpus.at(name);
    SearchBounds b = pinned(o.corpus, name, SearchBounds{});
    b.max_results = 1;
    for (const char* ty : types) {
      auto ds = search(Context{}, m, parse_type(ty), b);
      out.require(ds.size() == 1, std::string(name) + " : " + ty + " not found");
      if (!ds.empty()) out.require(check(ds[0]).type == parse_type(ty), std::string(name) + ": wrong type");
    }
    out.note(std::string(name) + " typed");
  }
  auto r = step(ogre());
  out.require(r.size() == 1 && r[0].first.rule == Rule::BetaV && alpha_eq(r[0].second, o.corpus.at("YstarUnfold")),
              "Y* does not unfold to YstarUnfold");
  return out;
}

Outcome clock(const SuiteOptions&) {
  Outcome out;
  measure_clock(6, SearchBounds{3, 8, 3, 1000}, out);
  return out;
}

Outcome substitution_and_splitting(const SuiteOptions&) {
  Outcome out;
  std::vector<Term> values;
  for_each_term(TermEnumerator{4, 0, true}, [&](const Term& v) {
    if (v.is(TermKind::Lam)) values.push_back(v);
  });
  std::map<std::string, std::vector<Derivation>> typed_values;
  auto value_typings = [&](const Term& v, const CompType& t) -> const std::vector<Derivation>& {
    std::string key = canonical_key(v) + " : " + print_type(t);
    auto it = typed_values.find(key);
    if (it != typed_values.end()) return it->second;
    SearchBounds b{type_size(t) + 2, 16, 2, 2};
    return typed_values.emplace(key, search(Context{}, v, ParType::of(t), b)).first->second;
  };
  std::size_t substitutions = 0, splits = 0;
  auto check_split = [&](const Derivation& d) {
    const auto& arrows = d.type().comps[0].arrows;
    if (arrows.size() < 2) return;
    for (const auto& blocks : split_comp(d.type().comps[0], 2)) {
      auto parts = split_value_derivation(d, blocks);
      std::size_t sum = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        Judgment j = check(parts[i]);
        out.require(j.type == ParType::of(blocks[i]), print_term(d.subject()) + ": split part has the wrong type");
        sum += measure(parts[i]);
      }
      out.require(sum == measure(d), print_term(d.subject()) + ": split measures do not add up");
      Derivation joined = join_value_derivations(parts);
      out.require(same_judgment(check(joined), d.judgment), print_term(d.subject()) + ": join changed the judgment");
      out.require(measure(joined) == measure(d), print_term(d.subject()) + ": join changed the measure");
      ++splits;
    }
  };
  for_each_term(TermEnumerator{5, 0, true}, [&](const Term& lam) {
    if (!lam.is(TermKind::Lam)) return;
    for (const auto& d : search_any(Context{}, lam, SearchBounds{4, 16, 2, 20})) {
      check_split(d);
      for (const auto& pi1 : d.premises) {
        const std::string& x = lam.name();
        CompType t = ctx_lookup(pi1.ctx(), x);
        for (const auto& v : values) {
          for (const auto& pi2 : value_typings(v, t)) {
            Derivation pi3 = substitute_derivation(pi1, x, pi2);
            Judgment j = check(pi3);
            std::string where = print_term(lam.body()) + " [" + print_term(v) + "/" + x + "]";
            out.require(alpha_eq(j.subject, substitute(lam.body(), x, v)), where + ": wrong subject");
            out.require(j.type == pi1.type(), where + ": wrong type");
            out.require(j.ctx == tensor_ctx(ctx_without(pi1.ctx(), x), pi2.ctx()), where + ": wrong context");
            out.require(measure(pi3) == measure(pi1) + measure(pi2), where + ": measures do not add up");
            check_split(pi2);
            ++substitutions;
          }
        }
      }
    }
  });
  out.require(substitutions >= 200, "only " + std::to_string(substitutions) + " substitution pairs");
  out.require(splits >= 200, "only " + std::to_string(splits) + " splits");
  out.note(std::to_string(substitutions) + " substitutions, " + std::to_string(splits) + " splits and joins");
  return out;
}

Outcome behaviour(const SuiteOptions& o) {
  Outcome out;
  ReductionGraph fs = explore(o.corpus.at("FS"));
  std::set<std::string> fs_nf = normal_form_keys(fs);
  out.require(fs.exhausted && fs_nf.count(canonical_key(lit("\\x.x"))), "FS does not reach I");
  ReductionGraph fsp = explore(o.corpus.at("FSp"));
  out.require(fsp.exhausted && fsp.normal_nodes().empty(), "FS' is not divergent");
  ReductionGraph dup = explore(o.corpus.at("DupSum"));
  std::set<std::string> expected = {canonical_key(lit("(\\x.x) || \\x.x x"))};
  out.require(dup.exhausted && normal_form_keys(dup) == expected, "DupSum normal forms differ from {I || D}");
  ReductionGraph b1 = explore(o.corpus.at("Bilin"));
  ReductionGraph b2 = explore(o.corpus.at("BilinSum"));
  out.require(b1.exhausted && b2.exhausted, "bilinearity graphs not exhausted");
  out.require(normal_form_keys(b1) == normal_form_keys(b2), "bilinearity normal forms differ");
  out.require(!normal_form_keys(b1).empty(), "bilinearity instance diverges");
  out.note("FS -> I, FS' diverges, DupSum -> I || D only, " + std::to_string(normal_form_keys(b1).size()) +
           " shared normal forms for bilinearity");
  return out;
}

void ogre_characterization(const SuiteOptions& o, std::size_t max_bound, Outcome& out) {
  SearchBounds b = pinned(o.corpus, "ogre", interp_search_defaults(), "search-size");
  b.max_results = 1;
  for (std::size_t n = 0; n <= max_bound; ++n) {
    InterpApprox y = interp(ogre(), n, b);
    std::vector<ParType> expected;
    for (const auto& t : enumerate_types(n)) {
      if (is_ogre_type(t)) expected.push_back(t);
    }
    out.require(y.types == expected, "interp(Y*) at bound " + std::to_string(n) + " differs from the ogre types");
  }
  out.note("interp(Y*) = ogre types up to " + std::to_string(max_bound));
}

void adequacy_all(const SuiteOptions& o, Outcome& out) {
  SearchBounds b = pinned(o.corpus, "semantics", interp_search_defaults(), "search-size");
  b.max_results = 1;
  auto n = static_cast<std::size_t>(o.corpus.bound("semantics", "interp-size", 5));
  ObsParams p;
  p.pool = o.pool;
  p.max_args = static_cast<std::size_t>(o.corpus.bound("semantics", "args", 2));
  std::vector<InterpApprox> is;
  for (const auto& e : o.corpus.entries()) {
    if (is_closed(e.second)) is.push_back(interp(e.second, n, b));
  }
  std::size_t inclusions = 0;
  for (const auto& a : is) {
    for (const auto& c : is) {
      AdequacyReport r = adequacy_check(a, c, p);
      inclusions += r.inclusion;
      out.require(r.holds, "adequacy fails for " + print_term(a.subject) + " and " + print_term(c.subject) + ": " +
                               describe(*r.separation));
    }
  }
  out.note("adequacy on " + std::to_string(is.size() * is.size()) + " pairs (" + std::to_string(inclusions) +
           " inclusions) at bound " + std::to_string(n));
}

Outcome semantics(const SuiteOptions& o) {
  Outcome out;
  SearchBounds b = pinned(o.corpus, "ogre", interp_search_defaults(), "search-size");
  b.max_results = 1;
  auto n = static_cast<std::size_t>(o.corpus.bound("ogre", "interp-size", 4));
  out.require(interp(lit("(\\x.x x) (\\x.x x)"), n, b).types.empty(), "interp(Omega) is not empty");
  ParType witness = parse_type("(1 -o 1) -o (1 -o 1)");
  InterpApprox ii = interp(lit("\\x.x"), n, b);
  InterpApprox iy = interp(ogre(), n, b);
  out.require(ii.contains(witness), "witness type missing from interp(I)");
  out.require(!iy.contains(witness), "witness type found in interp(Y*)");
  ogre_characterization(o, n, out);
  ObsParams p;
  p.pool = o.pool;
  p.max_args = 2;
  SeparationReport sep = obs_check(lit("\\x.x"), ogre(), p);
  out.require(!sep.separated, "I and Y* " + describe(sep));
  out.note("I below Y*: " + describe(sep) + "; " + print_type(witness) + " in interp(I) \\ interp(Y*)");
  adequacy_all(o, out);
  return out;
}

Outcome progress_and_sort(const SuiteOptions&) {
  Outcome out;
  progress(9, out);
  value_sort(6, out);
  return out;
}

// ---------------------------------------------------------------------------
// Property and semantic suites

/// Random closed term of at most `budget` nodes.
Term random_term(std::mt19937_64& rng, std::size_t budget, std::vector<std::string>& scope) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (budget < 3 || pick(4) == 0) {
    if (!scope.empty() && (budget < 2 || pick(2) == 0)) return Term::var(scope[pick(scope.size())]);
    std::string x = binder_name(scope.size());
    scope.push_back(x);
    Term body = budget >= 2 ? random_term(rng, budget - 1, scope) : Term::var(x);
    scope.pop_back();
    return Term::lam(x, body);
  }
  std::size_t kind = pick(5);
  if (kind == 0) {
    std::string x = binder_name(scope.size());
    scope.push_back(x);
    Term body = random_term(rng, budget - 1, scope);
    scope.pop_back();
    return Term::lam(x, body);
  }
  std::size_t left = 1 + pick(budget - 2);
  Term l = random_term(rng, left, scope);
  Term r = random_term(rng, budget - 1 - left, scope);
  if (kind == 1) return Term::sum(l, r);
  if (kind == 2) return Term::par(l, r);
  return Term::app(l, r);
}

Outcome prop_progress(const SuiteOptions& o) {
  Outcome out;
  progress(o.size, out);
  return out;
}

Outcome prop_round_trip(const SuiteOptions& o) {
  Outcome out;
  std::size_t n = 0;
  for (bool closed : {true, false}) {
    TermEnumerator e{closed ? o.size : std::min<std::size_t>(o.size, 6), closed ? 0u : 2u, closed};
    for_each_term(e, [&](const Term& m) {
      ++n;
      Term back = parse_term(print_term(m));
      out.require(alpha_eq(back, m) && canonical_key(back) == canonical_key(m), print_term(m) + " does not round trip");
    });
  }
  out.note(std::to_string(n) + " terms print and parse back");
  return out;
}

Outcome prop_determinism(const SuiteOptions& o) {
  Outcome out;
  std::size_t n = 0, exhausted = 0;
  std::function<bool(const Term&)> choice_free = [&](const Term& t) {
    if (t.is(TermKind::Sum)) return false;
    if (t.is(TermKind::Var)) return true;
    if (t.is(TermKind::Lam)) return choice_free(t.body());
    return choice_free(t.left()) && choice_free(t.right());
  };
  for_each_term(TermEnumerator{o.size, 0, true}, [&](const Term& m) {
    if (!choice_free(m)) return;
    ++n;
    ReductionGraph g = explore(m, 50, 2000);
    if (!g.exhausted) return;
    ++exhausted;
    out.require(normal_form_keys(g).size() <= 1, print_term(m) + " has several normal forms");
    out.require(g.normal_nodes().empty() || reduction_lengths(g, parallel_values(g.nodes[g.normal_nodes()[0]].term)->size()).size() == 1,
                print_term(m) + " reaches its normal form at different lengths");
  });
  out.note(std::to_string(exhausted) + " of " + std::to_string(n) + " choice-free terms explored fully");
  return out;
}

Outcome prop_clock(const SuiteOptions& o) {
  Outcome out;
  measure_clock(o.size, SearchBounds{5, 16, 3, 1000}, out);
  return out;
}

Outcome prop_value_sort(const SuiteOptions& o) {
  Outcome out;
  value_sort(std::min<std::size_t>(o.size, 6), out);
  return out;
}

Outcome prop_random(const SuiteOptions& o) {
  Outcome out;
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = 2000;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<std::string> scope;
    std::size_t budget = 8 + i % 12;
    Term m = random_term(rng, budget, scope);
    out.require(is_closed(m), print_term(m) + " is open");
    out.require(is_parallel_of_values(m) || !step(m).empty(), print_term(m) + " is stuck");
    out.require(alpha_eq(parse_term(print_term(m)), m), print_term(m) + " does not round trip");
    for (const auto& [label, r] : step(m)) {
      out.require(alpha_eq(apply_step(m, label), r), print_term(m) + ": a step does not replay");
    }
  }
  out.note(std::to_string(samples) + " random terms, seed " + std::to_string(o.seed));
  return out;
}

Outcome sem_monotone(const SuiteOptions& o) {
  Outcome out;
  SearchBounds b = pinned(o.corpus, "semantics", interp_search_defaults(), "search-size");
  std::size_t checked = 0;
  for (const auto& [name, m] : o.corpus.entries()) {
    if (!is_closed(m)) continue;
    InterpApprox lo = interp(m, 0, b);
    for (std::size_t n = 1; n <= 4; ++n) {
      InterpApprox hi = interp(m, n, b);
      out.require(lo.subset_of(hi), name + ": interp shrinks at bound " + std::to_string(n));
      lo = std::move(hi);
    }
    ++checked;
  }
  out.note(std::to_string(checked) + " corpus terms, bounds 0 to 4");
  return out;
}

Outcome sem_adequacy(const SuiteOptions& o) {
  Outcome out;
  adequacy_all(o, out);
  return out;
}

Outcome sem_ogre(const SuiteOptions& o) {
  Outcome out;
  out.require(check_ogre_unfolding(), "Y* does not unfold to \\y.Y*");
  ogre_characterization(o, static_cast<std::size_t>(o.corpus.bound("ogre", "interp-size", 4)), out);
  Term applied = ogre();
  for (int i = 0; i < 3; ++i) applied = Term::app(applied, o.pool.at(static_cast<std::size_t>(i) % o.pool.size()));
  out.require(converges(applied).converges(), "Y* applied to three values does not converge");
  return out;
}

Outcome sem_link(const SuiteOptions& o) {
  Outcome out;
  SearchBounds b = pinned(o.corpus, "semantics", interp_search_defaults(), "search-size");
  std::size_t n = 0;
  for (const auto& [name, m] : o.corpus.entries()) {
    if (!is_closed(m)) continue;
    Verdict v = converges(m, pinned_fuel(o.corpus, name), pinned_states(o.corpus, name));
    out.require(v.kind != Verdict::Kind::Unknown, name + ": convergence unknown within fuel");
    out.require(interp(m, 2, b).types.empty() == v.diverges(), name + ": interp and convergence disagree");
    ++n;
  }
  out.note(std::to_string(n) + " corpus terms");
  return out;
}

const std::map<std::string, std::vector<Criterion>>& registry() {
  static const std::map<std::string, std::vector<Criterion>> r = {
      {"paper",
       {
           {"1", "worked derivation and its measure", worked},
           {"2", "measures equal reduction lengths", exact_length},
           {"3", "typability and convergence", typability},
           {"4", "measure decreases and increases by one", clock},
           {"5", "substitution and splitting", substitution_and_splitting},
           {"6", "behaviour of choice and parallel composition", behaviour},
           {"7", "relational interpretation and the ogre", semantics},
           {"8", "progress and value sort", progress_and_sort},
       }},
      {"properties",
       {
           {"P1", "closed-term progress", prop_progress},
           {"P2", "print and parse round trip", prop_round_trip},
           {"P3", "choice-free determinism", prop_determinism},
           {"P4", "measure clock", prop_clock},
           {"P5", "value sort", prop_value_sort},
           {"P6", "random terms", prop_random},
       }},
      {"semantics",
       {
           {"S1", "monotonicity of interp", sem_monotone},
           {"S2", "bounded adequacy", sem_adequacy},
           {"S3", "ogre characterization", sem_ogre},
           {"S4", "typable iff convergent", sem_link},
       }},
  };
  return r;
}

const std::vector<Criterion>& criteria_of(const std::string& suite) {
  auto it = registry().find(suite);
  if (it == registry().end()) throw UsageError("unknown suite '" + suite + "' (expected paper, properties or semantics)");
  return it->second;
}

CriterionResult run_one(const Criterion& c, const SuiteOptions& o) {
  CriterionResult r{c.id, c.title, Status::Fail, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome out = c.run(o);
    r.status = out.ok ? Status::Pass : Status::Fail;
    std::string notes;
    for (const auto& n : out.notes) notes += (notes.empty() ? "" : "; ") + n;
    r.details = out.ok ? notes : out.failure;
  } catch (const std::exception& e) {
    r.details = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

bool SuiteResult::ok() const {
  for (const auto& i : items) {
    if (i.status == Status::Fail) return false;
  }
  return true;
}

json SuiteResult::to_json() const {
  json items_j = json::array();
  for (const auto& i : items) {
    items_j.push_back(json{{"id", i.id}, {"title", i.title}, {"status", status_name(i.status)}, {"details", i.details}});
  }
  return json{{"suite", name}, {"ok", ok()}, {"criteria", items_j}};
}

std::string SuiteResult::render() const {
  std::ostringstream os;
  for (const auto& i : items) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", i.seconds);
    os << "[" << status_name(i.status) << "] " << i.id << " " << i.title << " (" << secs << "): " << i.details << "\n";
  }
  return os.str();
}

SuiteOptions default_suite_options() {
  SuiteOptions o;
  o.pool = default_pool();
  o.worked = std::string(builtin_worked_text());
  return o;
}

std::vector<std::string> suite_names() { return {"paper", "properties", "semantics"}; }

std::vector<std::string> suite_criteria(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& c : criteria_of(suite)) out.push_back(c.id);
  return out;
}

CriterionResult run_criterion(const std::string& suite, const std::string& id, const SuiteOptions& o) {
  for (const auto& c : criteria_of(suite)) {
    if (c.id == id) return run_one(c, o);
  }
  throw UsageError("suite " + suite + " has no criterion " + id);
}

SuiteResult run_suite(const std::string& suite, const SuiteOptions& o) {
  const auto& cs = criteria_of(suite);
  SuiteResult out{suite, {}};
  if (!o.parallel) {
    for (const auto& c : cs) out.items.push_back(run_one(c, o));
    return out;
  }
  std::vector<std::future<CriterionResult>> jobs;
  for (const auto& c : cs) jobs.push_back(std::async(std::launch::async, [&c, &o] { return run_one(c, o); }));
  for (auto& j : jobs) out.items.push_back(j.get());
  return out;
}

}  // namespace llv
