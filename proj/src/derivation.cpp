#include "llv/derivation.hpp"

#include <algorithm>
#include <numeric>

#include "llv/syntax.hpp"

namespace llv {

bool same_judgment(const Judgment& a, const Judgment& b) {
  return a.ctx == b.ctx && a.type == b.type && alpha_eq(a.subject, b.subject);
}

std::string print_judgment(const Judgment& j) {
  return (j.ctx.empty() ? "" : print_context(j.ctx) + " ") + "|- " + print_term(j.subject) + " : " + print_type(j.type);
}

std::string drule_name(DRule r) {
  switch (r) {
    case DRule::Ax:
      return "ax";
    case DRule::Lam:
      return "lam";
    case DRule::App:
      return "app";
    case DRule::PlusL:
      return "plus_l";
    case DRule::PlusR:
      return "plus_r";
    case DRule::Par:
      return "par";
  }
  return "?";
}

DRule drule_from_name(const std::string& s) {
  for (DRule r : {DRule::Ax, DRule::Lam, DRule::App, DRule::PlusL, DRule::PlusR, DRule::Par}) {
    if (drule_name(r) == s) return r;
  }
  throw std::invalid_argument("unknown derivation rule '" + s + "'");
}

namespace {

std::string path_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "/";
  std::string s;
  for (std::size_t p : path) s += "/" + std::to_string(p);
  return s;
}

}  // namespace

CheckError::CheckError(std::vector<std::size_t> path, const std::string& msg)
    : std::runtime_error("at " + path_string(path) + ": " + msg), path_(std::move(path)) {}

// ---------------------------------------------------------------------------
// Checker

namespace {

void check_rec(const Derivation& d, std::vector<std::size_t>& path) {
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    check_rec(d.premises[i], path);
    path.pop_back();
  }
  auto fail = [&](const std::string& msg) { throw CheckError(path, msg); };
  const Judgment& j = d.judgment;
  const Term& m = j.subject;
  if (d.rule != DRule::App && j.type.comps.empty()) fail("empty par type");
  if (d.rule != DRule::App && !d.alignment.empty()) fail("alignment on a non-elimination node");

  switch (d.rule) {
    case DRule::Ax: {
      if (!m.is(TermKind::Var)) fail("axiom on a non-variable");
      if (!d.premises.empty()) fail("axiom with premises");
      if (!j.type.is_comp()) fail("axiom type must be a computational type");
      if (j.ctx != ctx_single(m.name(), j.type.comps.front())) fail("axiom context must be exactly " + m.name() + ":" + print_type(j.type));
      return;
    }
    case DRule::Lam: {
      if (!m.is(TermKind::Lam)) fail("abstraction rule on a non-abstraction");
      const std::string& x = m.name();
      CompType arrows;
      Context ctx;
      for (const auto& p : d.premises) {
        if (!alpha_eq(p.subject(), m.body())) fail("premise subject is not the abstraction body");
        arrows.arrows.push_back(Arrow{ctx_lookup(p.ctx(), x), p.type()});
        ctx = tensor_ctx(ctx, ctx_without(p.ctx(), x));
      }
      arrows.normalize();
      if (j.ctx.count(x)) fail("binder " + x + " leaks into the conclusion context");
      if (!(j.type == ParType::of(arrows))) fail("abstraction type must be " + print_type(arrows));
      if (j.ctx != ctx) fail("abstraction context is not the tensor of the premise contexts");
      return;
    }
    case DRule::App: {
      if (!m.is(TermKind::App)) fail("elimination rule on a non-application");
      if (d.premises.size() < 2) fail("elimination needs k >= 1 argument premises");
      std::size_t k = d.premises.size() - 1;
      if (d.alignment.size() != k) fail("alignment must have one entry per argument premise");
      const Derivation& principal = d.premises[0];
      if (!alpha_eq(principal.subject(), m.left())) fail("principal premise does not type the function");
      if (principal.type().arity() != k) {
        fail("principal par arity " + std::to_string(principal.type().arity()) + " differs from k=" + std::to_string(k));
      }
      std::vector<char> used(k, 0);
      ParType result;
      Context ctx = principal.ctx();
      for (std::size_t i = 0; i < k; ++i) {
        const Derivation& arg = d.premises[i + 1];
        const AppAlign& al = d.alignment[i];
        if (!alpha_eq(arg.subject(), m.right())) fail("argument premise does not type the argument");
        if (al.component >= k || used[al.component]) fail("alignment components must be a bijection");
        used[al.component] = 1;
        const CompType& block = principal.type().comps[al.component];
        std::size_t n = block.arrows.size();
        if (n == 0) fail("argument block " + std::to_string(i) + " is empty (n_i = 0)");
        if (arg.type().arity() != n) fail("argument par arity differs from its block size");
        if (al.pairing.size() != n) fail("pairing size differs from block size");
        std::vector<char> hit(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
          std::size_t p = al.pairing[a];
          if (p >= n || hit[p]) fail("pairing must be a bijection");
          hit[p] = 1;
          if (!(arg.type().comps[p] == block.arrows[a].dom)) fail("argument component does not match the arrow domain");
          for (const auto& c : block.arrows[a].cod.comps) result.comps.push_back(c);
        }
        ctx = tensor_ctx(ctx, arg.ctx());
      }
      result.normalize();
      if (!(result == j.type)) fail("elimination type must be " + print_type(result));
      if (j.ctx != ctx) fail("elimination context is not the tensor of the premise contexts");
      return;
    }
    case DRule::PlusL:
    case DRule::PlusR: {
      if (!m.is(TermKind::Sum)) fail("choice rule on a non-sum");
      if (d.premises.size() != 1) fail("choice rule needs exactly one premise");
      const Term& kept = d.rule == DRule::PlusL ? m.left() : m.right();
      const Derivation& p = d.premises[0];
      if (!alpha_eq(p.subject(), kept)) fail("premise does not type the chosen branch");
      if (!(p.type() == j.type) || p.ctx() != j.ctx) fail("choice rule must keep context and type");
      return;
    }
    case DRule::Par: {
      if (!m.is(TermKind::Par)) fail("parallel rule on a non-parallel term");
      if (d.premises.size() != 2) fail("parallel rule needs two premises");
      const auto& l = d.premises[0];
      const auto& r = d.premises[1];
      if (!alpha_eq(l.subject(), m.left()) || !alpha_eq(r.subject(), m.right())) fail("premises do not type the components");
      if (!(j.type == par(l.type(), r.type()))) fail("parallel type must be the par of the premise types");
      if (j.ctx != tensor_ctx(l.ctx(), r.ctx())) fail("parallel context is not the tensor of the premise contexts");
      return;
    }
  }
}

}  // namespace

Judgment check(const Derivation& d) {
  std::vector<std::size_t> path;
  check_rec(d, path);
  return d.judgment;
}

std::size_t measure(const Derivation& d) {
  std::size_t m = 0;
  for (const auto& p : d.premises) m += measure(p);
  if (d.rule == DRule::App) {
    std::size_t n = 0;
    for (std::size_t i = 1; i < d.premises.size(); ++i) n += d.premises[i].type().arity();
    m += 2 * n - 1;
  } else if (d.rule == DRule::PlusL || d.rule == DRule::PlusR) {
    m += 1;
  }
  return m;
}

std::size_t derivation_height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premises) h = std::max(h, derivation_height(p));
  return h + 1;
}

// ---------------------------------------------------------------------------
// Builders

std::string fingerprint(const Derivation& d) {
  std::string s = drule_name(d.rule) + "{" + canonical_key(d.subject()) + "|" + print_context(d.ctx()) + "|" +
                  print_type(d.type());
  for (const auto& al : d.alignment) {
    s += "|" + std::to_string(al.component) + ":";
    for (std::size_t p : al.pairing) s += std::to_string(p) + ",";
  }
  for (const auto& p : d.premises) s += fingerprint(p);
  return s + "}";
}

Derivation make_ax(const std::string& x, const CompType& t) {
  return Derivation{DRule::Ax, Judgment{ctx_single(x, t), Term::var(x), ParType::of(t)}, {}, {}};
}

Derivation make_lam(const std::string& binder, const Term& body, std::vector<Derivation> premises) {
  std::vector<std::pair<std::string, Derivation>> keyed;
  keyed.reserve(premises.size());
  for (auto& p : premises) keyed.emplace_back(fingerprint(p), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    Arrow aa{ctx_lookup(a.second.ctx(), binder), a.second.type()};
    Arrow bb{ctx_lookup(b.second.ctx(), binder), b.second.type()};
    if (auto c = aa <=> bb; c != 0) return c < 0;
    return a.first < b.first;
  });
  CompType arrows;
  Context ctx;
  std::vector<Derivation> sorted;
  for (auto& [key, p] : keyed) {
    arrows.arrows.push_back(Arrow{ctx_lookup(p.ctx(), binder), p.type()});
    ctx = tensor_ctx(ctx, ctx_without(p.ctx(), binder));
    sorted.push_back(std::move(p));
  }
  arrows.normalize();
  return Derivation{DRule::Lam, Judgment{ctx, Term::lam(binder, body), ParType::of(arrows)}, std::move(sorted), {}};
}

Derivation make_app(Derivation principal, std::vector<Derivation> args, std::vector<AppAlign> alignment) {
  if (args.size() != alignment.size()) throw CheckError({}, "alignment must have one entry per argument premise");
  ParType result;
  Context ctx = principal.ctx();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& al = alignment[i];
    if (al.component >= principal.type().arity()) throw CheckError({}, "alignment component out of range");
    const CompType& block = principal.type().comps[al.component];
    for (const auto& a : block.arrows) result.comps.insert(result.comps.end(), a.cod.comps.begin(), a.cod.comps.end());
    ctx = tensor_ctx(ctx, args[i].ctx());
  }
  result.normalize();
  Term subject = Term::app(principal.subject(), args.empty() ? principal.subject() : args.front().subject());
  std::vector<Derivation> premises;
  premises.reserve(args.size() + 1);
  premises.push_back(std::move(principal));
  for (auto& a : args) premises.push_back(std::move(a));
  return Derivation{DRule::App, Judgment{ctx, subject, result}, std::move(premises), std::move(alignment)};
}

Derivation make_app_by_value(Derivation principal, std::vector<Derivation> args, const std::vector<CompType>& components) {
  if (args.size() != components.size()) throw CheckError({}, "one principal component per argument is required");
  std::vector<std::size_t> order(args.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys;
  for (const auto& a : args) keys.push_back(fingerprint(a));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (auto c = components[a] <=> components[b]; c != 0) return c < 0;
    return keys[a] < keys[b];
  });
  const auto& comps = principal.type().comps;
  std::vector<char> used(comps.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> placed;  // (component, arg index)
  for (std::size_t i : order) {
    std::size_t c = 0;
    while (c < comps.size() && (used[c] || !(comps[c] == components[i]))) ++c;
    if (c == comps.size()) throw CheckError({}, "principal type has no free component " + print_type(components[i]));
    used[c] = 1;
    placed.emplace_back(c, i);
  }
  std::sort(placed.begin(), placed.end());
  std::vector<Derivation> sorted_args;
  std::vector<AppAlign> alignment;
  for (auto [c, i] : placed) {
    const CompType& block = comps[c];
    const auto& arg_comps = args[i].type().comps;
    std::vector<char> taken(arg_comps.size(), 0);
    AppAlign al{c, {}};
    for (const auto& a : block.arrows) {
      std::size_t p = 0;
      while (p < arg_comps.size() && (taken[p] || !(arg_comps[p] == a.dom))) ++p;
      if (p == arg_comps.size()) throw CheckError({}, "argument type does not provide domain " + print_type(a.dom));
      taken[p] = 1;
      al.pairing.push_back(p);
    }
    alignment.push_back(std::move(al));
    sorted_args.push_back(std::move(args[i]));
  }
  return make_app(std::move(principal), std::move(sorted_args), std::move(alignment));
}

Derivation make_plus(DRule side, Derivation premise, const Term& other) {
  Term subject = side == DRule::PlusL ? Term::sum(premise.subject(), other) : Term::sum(other, premise.subject());
  Judgment j{premise.ctx(), subject, premise.type()};
  std::vector<Derivation> ps;
  ps.push_back(std::move(premise));
  return Derivation{side, std::move(j), std::move(ps), {}};
}

Derivation make_par(Derivation left, Derivation right) {
  Judgment j{tensor_ctx(left.ctx(), right.ctx()), Term::par(left.subject(), right.subject()), par(left.type(), right.type())};
  std::vector<Derivation> ps;
  ps.push_back(std::move(left));
  ps.push_back(std::move(right));
  return Derivation{DRule::Par, std::move(j), std::move(ps), {}};
}

Derivation unit_value_derivation(const Term& v) {
  if (v.is(TermKind::Var)) return make_ax(v.name(), CompType{});
  if (v.is(TermKind::Lam)) return make_lam(v.name(), v.body(), {});
  throw TermError("unit typing needs a value");
}

// ---------------------------------------------------------------------------
// Splitting and substitution

std::vector<Derivation> split_value_derivation(const Derivation& d, const std::vector<CompType>& blocks) {
  if (!is_value(d.subject())) throw CheckError({}, "only derivations of values can be split");
  if (!d.type().is_comp()) throw CheckError({}, "a value derivation must have a computational type");
  CompType total;
  for (const auto& b : blocks) total = tensor(total, b);
  if (!(total == d.type().comps.front())) throw CheckError({}, "blocks do not tensor to " + print_type(d.type()));

  std::vector<Derivation> out;
  if (d.rule == DRule::Ax) {
    for (const auto& b : blocks) out.push_back(make_ax(d.subject().name(), b));
    return out;
  }
  if (d.rule != DRule::Lam) throw CheckError({}, "value derivation must end in an axiom or an abstraction");
  const std::string& x = d.subject().name();
  std::vector<char> used(d.premises.size(), 0);
  for (const auto& b : blocks) {
    std::vector<Derivation> mine;
    for (const auto& a : b.arrows) {
      std::size_t p = 0;
      for (; p < d.premises.size(); ++p) {
        if (used[p]) continue;
        const auto& pr = d.premises[p];
        if (Arrow{ctx_lookup(pr.ctx(), x), pr.type()} == a) break;
      }
      if (p == d.premises.size()) throw CheckError({}, "no premise provides arrow " + print_type(CompType{{a}}));
      used[p] = 1;
      mine.push_back(d.premises[p]);
    }
    out.push_back(make_lam(x, d.subject().body(), std::move(mine)));
  }
  return out;
}

Derivation join_value_derivations(const std::vector<Derivation>& parts) {
  if (parts.empty()) throw CheckError({}, "nothing to join");
  const Term& v = parts.front().subject();
  if (!is_value(v)) throw CheckError({}, "only derivations of values can be joined");
  for (const auto& p : parts) {
    if (!alpha_eq(p.subject(), v)) throw CheckError({}, "joined derivations must type the same value");
    if (!p.type().is_comp()) throw CheckError({}, "a value derivation must have a computational type");
  }
  if (v.is(TermKind::Var)) {
    CompType t;
    for (const auto& p : parts) t = tensor(t, p.type().comps.front());
    return make_ax(v.name(), t);
  }
  const std::string& x = v.name();
  std::vector<Derivation> premises;
  for (const auto& p : parts) {
    if (p.rule != DRule::Lam) throw CheckError({}, "abstraction derivation expected");
    const std::string& y = p.subject().name();
    for (const auto& q : p.premises) premises.push_back(y == x ? q : rename_free(q, y, x));
  }
  return make_lam(x, v.body(), std::move(premises));
}

namespace {

Derivation subst_rec(const Derivation& d1, const std::string& x, const Derivation& d2) {
  const Term& v = d2.subject();
  CompType tau = ctx_lookup(d1.ctx(), x);
  if (!(ParType::of(tau) == d2.type())) {
    throw CheckError({}, "type of " + x + " is " + print_type(tau) + " but the value has type " + print_type(d2.type()));
  }
  switch (d1.rule) {
    case DRule::Ax:
      if (d1.subject().name() == x) return d2;
      return d1;
    case DRule::Lam: {
      const Term& lam = d1.subject();
      std::string z = lam.name();
      if (z == x || !is_free_in(x, lam.body())) {
        // x does not occur, so its type is 1 and the value carries no context.
        return d1;
      }
      std::vector<Derivation> premises = d1.premises;
      Term body = lam.body();
      auto fv = free_vars(v);
      if (fv.count(z)) {
        std::set<std::string> avoid = fv;
        auto fb = free_vars(body);
        avoid.insert(fb.begin(), fb.end());
        avoid.insert(x);
        std::string z2 = fresh_name(z, avoid);
        for (auto& p : premises) p = rename_free(p, z, z2);
        body = substitute(body, z, Term::var(z2));
        z = z2;
      }
      std::vector<CompType> blocks;
      for (const auto& p : premises) blocks.push_back(ctx_lookup(p.ctx(), x));
      auto parts = split_value_derivation(d2, blocks);
      std::vector<Derivation> out;
      for (std::size_t i = 0; i < premises.size(); ++i) out.push_back(subst_rec(premises[i], x, parts[i]));
      return make_lam(z, substitute(body, x, v), std::move(out));
    }
    case DRule::App: {
      std::vector<CompType> blocks;
      for (const auto& p : d1.premises) blocks.push_back(ctx_lookup(p.ctx(), x));
      auto parts = split_value_derivation(d2, blocks);
      Derivation principal = subst_rec(d1.premises[0], x, parts[0]);
      std::vector<Derivation> args;
      for (std::size_t i = 1; i < d1.premises.size(); ++i) args.push_back(subst_rec(d1.premises[i], x, parts[i]));
      Derivation r = make_app(std::move(principal), std::move(args), d1.alignment);
      r.judgment.subject = substitute(d1.subject(), x, v);
      return r;
    }
    case DRule::PlusL:
    case DRule::PlusR: {
      const Term& s = d1.subject();
      const Term& other = d1.rule == DRule::PlusL ? s.right() : s.left();
      Derivation r = make_plus(d1.rule, subst_rec(d1.premises[0], x, d2), substitute(other, x, v));
      r.judgment.subject = substitute(s, x, v);
      return r;
    }
    case DRule::Par: {
      auto parts = split_value_derivation(d2, {ctx_lookup(d1.premises[0].ctx(), x), ctx_lookup(d1.premises[1].ctx(), x)});
      Derivation r = make_par(subst_rec(d1.premises[0], x, parts[0]), subst_rec(d1.premises[1], x, parts[1]));
      r.judgment.subject = substitute(d1.subject(), x, v);
      return r;
    }
  }
  throw CheckError({}, "unknown rule");
}

}  // namespace

Derivation substitute_derivation(const Derivation& d1, const std::string& x, const Derivation& d2) {
  if (!is_value(d2.subject())) throw CheckError({}, "substitution needs a derivation of a value");
  return subst_rec(d1, x, d2);
}

Derivation rename_free(const Derivation& d, const std::string& x, const std::string& y) {
  if (x == y) return d;
  return substitute_derivation(d, x, make_ax(y, ctx_lookup(d.ctx(), x)));
}

}  // namespace llv
