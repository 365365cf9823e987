#include "llv/term.hpp"

#include <cctype>
#include <vector>

namespace llv {

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), {Term(), Term()}, 1}));
}

Term Term::lam(std::string binder, Term body) {
  std::size_t sz = 1 + body.size();
  return Term(std::make_shared<const Node>(
      Node{TermKind::Lam, std::move(binder), {std::move(body), Term()}, sz}));
}

Term Term::app(Term fun, Term arg) {
  std::size_t sz = 1 + fun.size() + arg.size();
  return Term(std::make_shared<const Node>(Node{TermKind::App, {}, {std::move(fun), std::move(arg)}, sz}));
}

Term Term::sum(Term left, Term right) {
  std::size_t sz = 1 + left.size() + right.size();
  return Term(std::make_shared<const Node>(Node{TermKind::Sum, {}, {std::move(left), std::move(right)}, sz}));
}

Term Term::par(Term left, Term right) {
  std::size_t sz = 1 + left.size() + right.size();
  return Term(std::make_shared<const Node>(Node{TermKind::Par, {}, {std::move(left), std::move(right)}, sz}));
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      for (const auto& b : bound) {
        if (b == t.name()) return;
      }
      out.insert(t.name());
      return;
    case TermKind::Lam:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(t.left(), bound, out);
      collect_free(t.right(), bound, out);
  }
}

bool occurs_free(const std::string& x, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.name() == x;
    case TermKind::Lam:
      return t.name() != x && occurs_free(x, t.body());
    default:
      return occurs_free(x, t.left()) || occurs_free(x, t.right());
  }
}

// Binder stacks hold names, innermost last.
int lookup(const std::vector<std::string>& env, const std::string& x) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == x) return static_cast<int>(env.size() - 1 - i);
  }
  return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<std::string>& ea, std::vector<std::string>& eb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      int ia = lookup(ea, a.name());
      int ib = lookup(eb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case TermKind::Lam: {
      ea.push_back(a.name());
      eb.push_back(b.name());
      bool r = alpha_rec(a.body(), b.body(), ea, eb);
      ea.pop_back();
      eb.pop_back();
      return r;
    }
    default:
      return alpha_rec(a.left(), b.left(), ea, eb) && alpha_rec(a.right(), b.right(), ea, eb);
  }
}

void key_rec(const Term& t, std::vector<std::string>& env, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      int i = lookup(env, t.name());
      if (i >= 0) {
        out += '#';
        out += std::to_string(i);
      } else {
        out += '$';
        out += t.name();
      }
      out += ' ';
      return;
    }
    case TermKind::Lam:
      out += "L(";
      env.push_back(t.name());
      key_rec(t.body(), env, out);
      env.pop_back();
      out += ')';
      return;
    case TermKind::App:
      out += "A(";
      break;
    case TermKind::Sum:
      out += "S(";
      break;
    case TermKind::Par:
      out += "P(";
      break;
  }
  key_rec(t.left(), env, out);
  out += ',';
  key_rec(t.right(), env, out);
  out += ')';
}

Term subst_rec(const Term& m, const std::string& x, const Term& v, const std::set<std::string>& fv_v) {
  switch (m.kind()) {
    case TermKind::Var:
      return m.name() == x ? v : m;
    case TermKind::Lam: {
      if (m.name() == x || !occurs_free(x, m.body())) return m;
      if (fv_v.count(m.name()) == 0) {
        return Term::lam(m.name(), subst_rec(m.body(), x, v, fv_v));
      }
      std::set<std::string> avoid = fv_v;
      std::vector<std::string> scratch;
      collect_free(m.body(), scratch, avoid);
      avoid.insert(x);
      std::string y = fresh_name(m.name(), avoid);
      Term renamed = subst_rec(m.body(), m.name(), Term::var(y), {y});
      return Term::lam(y, subst_rec(renamed, x, v, fv_v));
    }
    case TermKind::App:
      return Term::app(subst_rec(m.left(), x, v, fv_v), subst_rec(m.right(), x, v, fv_v));
    case TermKind::Sum:
      return Term::sum(subst_rec(m.left(), x, v, fv_v), subst_rec(m.right(), x, v, fv_v));
    case TermKind::Par:
      return Term::par(subst_rec(m.left(), x, v, fv_v), subst_rec(m.right(), x, v, fv_v));
  }
  return m;
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

bool is_free_in(const std::string& x, const Term& t) { return occurs_free(x, t); }

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  std::vector<std::string> ea, eb;
  return alpha_rec(a, b, ea, eb);
}

std::string canonical_key(const Term& t) {
  std::string out;
  std::vector<std::string> env;
  key_rec(t, env, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  if (avoid.count(stem) == 0) return stem;
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (avoid.count(cand) == 0) return cand;
  }
}

Term substitute(const Term& m, const std::string& x, const Term& v) {
  if (!is_value(v)) throw TermError("substitution is only defined for values");
  return subst_rec(m, x, v, free_vars(v));
}

Term rename_binder(const Term& lam, const std::string& new_binder) {
  if (!lam.is(TermKind::Lam)) throw TermError("rename_binder expects an abstraction");
  if (lam.name() == new_binder) return lam;
  if (occurs_free(new_binder, lam.body())) throw TermError("binder rename would capture " + new_binder);
  return Term::lam(new_binder, substitute(lam.body(), lam.name(), Term::var(new_binder)));
}

}  // namespace llv
