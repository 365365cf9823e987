#include "llv/transform.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "llv/syntax.hpp"

namespace llv {

void validate_trace(const Trace& t) {
  Term cur = t.start;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    Term next = apply_step(cur, t.steps[i].label);
    if (!alpha_eq(next, t.steps[i].result)) {
      throw TermError("trace step " + std::to_string(i) + " does not produce " + print_term(t.steps[i].result));
    }
    cur = next;
  }
}

namespace {

// Splits the arguments of an elimination node by which side of a par each
// principal component comes from. Equal components are interchangeable.
std::vector<bool> goes_left(const std::vector<CompType>& comps, const ParType& left) {
  std::vector<CompType> pool = left.comps;
  std::vector<bool> out;
  for (const auto& c : comps) {
    auto it = std::find(pool.begin(), pool.end(), c);
    if (it != pool.end()) {
      pool.erase(it);
      out.push_back(true);
    } else {
      out.push_back(false);
    }
  }
  return out;
}

std::pair<StepLabel, Derivation> reduce_rec(const Derivation& d) {
  const Term& m = d.subject();
  auto prefixed = [](int c, std::pair<StepLabel, Derivation> r) {
    r.first.path.insert(r.first.path.begin(), c);
    return r;
  };
  switch (d.rule) {
    case DRule::PlusL:
      return {StepLabel{Rule::PlusL, {}}, d.premises[0]};
    case DRule::PlusR:
      return {StepLabel{Rule::PlusR, {}}, d.premises[0]};
    case DRule::Par: {
      if (!is_normal(m.left())) {
        auto r = reduce_rec(d.premises[0]);
        return prefixed(0, {r.first, make_par(std::move(r.second), d.premises[1])});
      }
      auto r = reduce_rec(d.premises[1]);
      return prefixed(1, {r.first, make_par(d.premises[0], std::move(r.second))});
    }
    case DRule::App:
      break;
    case DRule::Ax:
    case DRule::Lam:
      throw TermError("guided step on a value");
  }

  const Derivation& principal = d.premises[0];
  std::vector<Derivation> args(d.premises.begin() + 1, d.premises.end());
  std::vector<CompType> comps;
  for (const auto& al : d.alignment) comps.push_back(principal.type().comps[al.component]);
  const Term& f = m.left();
  const Term& a = m.right();

  if (f.is(TermKind::Par)) {
    const Derivation& dl = principal.premises[0];
    const Derivation& dr = principal.premises[1];
    auto left = goes_left(comps, dl.type());
    std::vector<Derivation> al, ar;
    std::vector<CompType> cl, cr;
    for (std::size_t i = 0; i < args.size(); ++i) {
      (left[i] ? al : ar).push_back(args[i]);
      (left[i] ? cl : cr).push_back(comps[i]);
    }
    Derivation l = make_app_by_value(dl, std::move(al), cl);
    Derivation r = make_app_by_value(dr, std::move(ar), cr);
    return {StepLabel{Rule::ParAppL, {}}, make_par(std::move(l), std::move(r))};
  }

  if (is_value(f) && a.is(TermKind::Par)) {
    const Derivation& arg = args.at(0);
    const AppAlign& al = d.alignment.at(0);
    const CompType& block = comps.at(0);
    auto left = goes_left(arg.type().comps, arg.premises[0].type());
    CompType tl, tr;
    for (std::size_t j = 0; j < block.arrows.size(); ++j) {
      (left[al.pairing[j]] ? tl : tr).arrows.push_back(block.arrows[j]);
    }
    tl.normalize();
    tr.normalize();
    auto parts = split_value_derivation(principal, {tl, tr});
    Derivation l = make_app_by_value(std::move(parts[0]), {arg.premises[0]}, {tl});
    Derivation r = make_app_by_value(std::move(parts[1]), {arg.premises[1]}, {tr});
    return {StepLabel{Rule::ParAppR, {}}, make_par(std::move(l), std::move(r))};
  }

  if (f.is(TermKind::Lam) && is_value(a)) {
    const Derivation& body = principal.premises.at(0);
    Derivation r = substitute_derivation(body, f.name(), args.at(0));
    return {StepLabel{Rule::BetaV, {}}, std::move(r)};
  }

  if (!is_value(f)) {
    auto r = reduce_rec(principal);
    return prefixed(0, {r.first, make_app(std::move(r.second), args, d.alignment)});
  }
  if (!is_value(a)) {
    auto r = reduce_rec(args.at(0));
    return prefixed(1, {r.first, make_app(principal, {std::move(r.second)}, d.alignment)});
  }
  throw TermError("guided step on a stuck application " + print_term(m));
}

}  // namespace

GuidedStep guided_step(const Derivation& d) {
  const Term& m = d.subject();
  if (!is_closed(m)) throw TermError("guided step needs a closed subject");
  if (is_normal(m)) throw TermError("guided step on a normal form");
  auto [label, nd] = reduce_rec(d);
  Term result = nd.subject();
  return GuidedStep{std::move(label), std::move(result), std::move(nd)};
}

Trace guided_run(const Derivation& d) {
  Trace t{d.subject(), {}};
  Derivation cur = d;
  while (!is_normal(cur.subject())) {
    GuidedStep s = guided_step(cur);
    t.steps.push_back(TraceStep{s.label, s.result});
    cur = std::move(s.derivation);
  }
  return t;
}

namespace {

struct AntiResult {
  Derivation body;
  std::vector<Derivation> pieces;
};

// From a derivation d of b[v/x], a derivation of b with x typed by the
// tensor of the pieces, each piece typing one residual of v.
AntiResult anti_substitute(const Term& b, const std::string& x, const Term& v, const Derivation& d) {
  if (!is_free_in(x, b)) return {d, {}};
  switch (b.kind()) {
    case TermKind::Var:
      return {make_ax(x, d.type().comps.at(0)), {d}};
    case TermKind::Lam: {
      if (d.rule != DRule::Lam) throw CheckError({}, "abstraction expected in anti-substitution");
      std::set<std::string> avoid = free_vars(b);
      auto fv = free_vars(v);
      avoid.insert(fv.begin(), fv.end());
      avoid.insert(x);
      for (const auto& [y, t] : d.ctx()) avoid.insert(y);
      std::string w = fresh_name(b.name(), avoid);
      const std::string& z = d.subject().name();
      Term body = substitute(b.body(), b.name(), Term::var(w));
      std::vector<Derivation> premises;
      std::vector<Derivation> pieces;
      for (const auto& p : d.premises) {
        auto r = anti_substitute(body, x, v, rename_free(p, z, w));
        premises.push_back(std::move(r.body));
        for (auto& q : r.pieces) pieces.push_back(std::move(q));
      }
      return {make_lam(w, body, std::move(premises)), std::move(pieces)};
    }
    case TermKind::App: {
      if (d.rule != DRule::App) throw CheckError({}, "elimination expected in anti-substitution");
      std::vector<Derivation> pieces;
      auto r = anti_substitute(b.left(), x, v, d.premises[0]);
      pieces = std::move(r.pieces);
      std::vector<Derivation> args;
      for (std::size_t i = 1; i < d.premises.size(); ++i) {
        auto s = anti_substitute(b.right(), x, v, d.premises[i]);
        args.push_back(std::move(s.body));
        for (auto& q : s.pieces) pieces.push_back(std::move(q));
      }
      Derivation out = make_app(std::move(r.body), std::move(args), d.alignment);
      return {std::move(out), std::move(pieces)};
    }
    case TermKind::Sum: {
      if (d.rule != DRule::PlusL && d.rule != DRule::PlusR) throw CheckError({}, "choice expected in anti-substitution");
      bool left = d.rule == DRule::PlusL;
      auto r = anti_substitute(left ? b.left() : b.right(), x, v, d.premises[0]);
      return {make_plus(d.rule, std::move(r.body), left ? b.right() : b.left()), std::move(r.pieces)};
    }
    case TermKind::Par: {
      if (d.rule != DRule::Par) throw CheckError({}, "parallel rule expected in anti-substitution");
      auto l = anti_substitute(b.left(), x, v, d.premises[0]);
      auto r = anti_substitute(b.right(), x, v, d.premises[1]);
      for (auto& q : r.pieces) l.pieces.push_back(std::move(q));
      return {make_par(std::move(l.body), std::move(r.body)), std::move(l.pieces)};
    }
  }
  throw CheckError({}, "unknown term kind");
}

Derivation expand_redex(const Derivation& d, const Term& m, Rule rule) {
  switch (rule) {
    case Rule::PlusL:
      return make_plus(DRule::PlusL, d, m.right());
    case Rule::PlusR:
      return make_plus(DRule::PlusR, d, m.left());
    case Rule::ParAppL: {
      if (d.rule != DRule::Par) throw CheckError({}, "contractum of a parallel application must end in a parallel rule");
      const Derivation& l = d.premises[0];
      const Derivation& r = d.premises[1];
      Derivation fun = make_par(l.premises.at(0), r.premises.at(0));
      std::vector<Derivation> args;
      std::vector<CompType> comps;
      for (const Derivation* side : {&l, &r}) {
        for (std::size_t i = 0; i < side->alignment.size(); ++i) {
          args.push_back(side->premises[i + 1]);
          comps.push_back(side->premises[0].type().comps[side->alignment[i].component]);
        }
      }
      return make_app_by_value(std::move(fun), std::move(args), comps);
    }
    case Rule::ParAppR: {
      if (d.rule != DRule::Par) throw CheckError({}, "contractum of a parallel argument must end in a parallel rule");
      const Derivation& l = d.premises[0];
      const Derivation& r = d.premises[1];
      Derivation fun = join_value_derivations({l.premises.at(0), r.premises.at(0)});
      Derivation arg = make_par(l.premises.at(1), r.premises.at(1));
      CompType c = fun.type().comps.at(0);
      Derivation out = make_app_by_value(std::move(fun), {std::move(arg)}, {c});
      out.judgment.subject = m;
      return out;
    }
    case Rule::BetaV: {
      const Term& lam = m.left();
      const Term& v = m.right();
      auto r = anti_substitute(lam.body(), lam.name(), v, d);
      Derivation arg = r.pieces.empty() ? unit_value_derivation(v) : join_value_derivations(r.pieces);
      Derivation fun = make_lam(lam.name(), lam.body(), {std::move(r.body)});
      CompType c = fun.type().comps.at(0);
      return make_app_by_value(std::move(fun), {std::move(arg)}, {c});
    }
  }
  throw CheckError({}, "unknown rule");
}

Derivation expand_rec(const Derivation& d, const Term& m, const StepLabel& label, std::size_t i) {
  if (i == label.path.size()) {
    Derivation out = expand_redex(d, m, label.rule);
    out.judgment.subject = m;
    return out;
  }
  int c = label.path[i];
  if (m.is(TermKind::Par)) {
    if (d.rule != DRule::Par) throw CheckError({}, "parallel rule expected along the step path");
    if (c == 0) return make_par(expand_rec(d.premises[0], m.left(), label, i + 1), d.premises[1]);
    return make_par(d.premises[0], expand_rec(d.premises[1], m.right(), label, i + 1));
  }
  if (m.is(TermKind::App)) {
    if (d.rule != DRule::App) throw CheckError({}, "elimination expected along the step path");
    std::vector<Derivation> args(d.premises.begin() + 1, d.premises.end());
    if (c == 0) {
      Derivation out = make_app(expand_rec(d.premises[0], m.left(), label, i + 1), std::move(args), d.alignment);
      out.judgment.subject = m;
      return out;
    }
    for (auto& a : args) a = expand_rec(a, m.right(), label, i + 1);
    Derivation out = make_app(d.premises[0], std::move(args), d.alignment);
    out.judgment.subject = m;
    return out;
  }
  throw TermError("step path leaves the evaluation contexts");
}

}  // namespace

Derivation expand_step(const Derivation& d, const Term& m, const StepLabel& label) {
  Term n = apply_step(m, label);
  if (!alpha_eq(n, d.subject())) {
    throw TermError("the step from " + print_term(m) + " gives " + print_term(n) + ", not " + print_term(d.subject()));
  }
  return expand_rec(d, m, label, 0);
}

namespace {

Derivation unit_parallel(const Term& t) {
  if (is_value(t)) return unit_value_derivation(t);
  if (!t.is(TermKind::Par)) throw TermError("not a parallel composition of values: " + print_term(t));
  return make_par(unit_parallel(t.left()), unit_parallel(t.right()));
}

}  // namespace

Derivation type_via_trace(const Trace& t) {
  validate_trace(t);
  if (!is_closed(t.start)) throw TermError("type reconstruction needs a closed start term");
  if (!parallel_values(t.end())) throw TermError("trace does not end in a parallel composition of values");
  Derivation d = unit_parallel(t.end());
  for (std::size_t i = t.steps.size(); i-- > 0;) {
    const Term& before = i == 0 ? t.start : t.steps[i - 1].result;
    d = expand_step(d, before, t.steps[i].label);
  }
  return d;
}

}  // namespace llv
