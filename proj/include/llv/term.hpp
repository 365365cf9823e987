#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace llv {

enum class TermKind : std::uint8_t { Var, Lam, App, Sum, Par };

/// Immutable term of the call-by-value calculus with choice (+) and
/// parallel composition (||). Nodes are shared; copying a Term is cheap.
///
/// For App, Sum and Par the two children are `left()` and `right()`
/// (function and argument for App). For Lam the binder is `name()` and the
/// body is `body()`.
class Term {
 public:
  static Term var(std::string name);
  static Term lam(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term sum(Term left, Term right);
  static Term par(Term left, Term right);

  TermKind kind() const;
  bool is(TermKind k) const;
  const std::string& name() const;
  const Term& body() const;
  const Term& left() const;
  const Term& right() const;
  const Term& child(std::size_t i) const;

  /// Node count: every constructor counts one.
  std::size_t size() const;
  /// Identity of the shared node (not a semantic comparison).
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::string name;
  std::array<Term, 2> kids;
  std::size_t size;
};

inline TermKind Term::kind() const { return node_->kind; }
inline bool Term::is(TermKind k) const { return node_->kind == k; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::body() const { return node_->kids[0]; }
inline const Term& Term::left() const { return node_->kids[0]; }
inline const Term& Term::right() const { return node_->kids[1]; }
inline const Term& Term::child(std::size_t i) const { return node_->kids[i]; }
inline std::size_t Term::size() const { return node_->size; }

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values are exactly variables and abstractions.
inline bool is_value(const Term& t) { return t.is(TermKind::Var) || t.is(TermKind::Lam); }

std::set<std::string> free_vars(const Term& t);
bool is_free_in(const std::string& x, const Term& t);
inline bool is_closed(const Term& t) { return free_vars(t).empty(); }

bool alpha_eq(const Term& a, const Term& b);

/// Nameless rendering (de Bruijn indices for bound variables, names for free
/// ones). Two terms have the same key iff they are alpha-equivalent.
std::string canonical_key(const Term& t);

/// A name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Capture-avoiding m[v/x]. Throws TermError when v is not a value.
Term substitute(const Term& m, const std::string& x, const Term& v);

/// Renames the binder of an abstraction, keeping it alpha-equivalent.
Term rename_binder(const Term& lam, const std::string& new_binder);

}  // namespace llv
