#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "llv/term.hpp"
#include "llv/types.hpp"

namespace llv {

struct Judgment {
  Context ctx;
  Term subject;
  ParType type;
};

bool same_judgment(const Judgment& a, const Judgment& b);
std::string print_judgment(const Judgment& j);

enum class DRule { Ax, Lam, App, PlusL, PlusR, Par };

std::string drule_name(DRule r);
DRule drule_from_name(const std::string& s);

/// Alignment of one argument premise of an elimination node.
///
/// `component` indexes the principal premise's par type; that component is a
/// tensor of n arrows. `pairing[j]` names the component of the argument's par
/// type that the j-th arrow consumes. Indices refer to the canonical (sorted)
/// order of the types involved.
struct AppAlign {
  std::size_t component = 0;
  std::vector<std::size_t> pairing;

  friend bool operator==(const AppAlign&, const AppAlign&) = default;
};

/// Typing derivation. For App the first premise is the principal one and the
/// remaining k premises type the argument, one per alignment entry.
struct Derivation {
  DRule rule;
  Judgment judgment;
  std::vector<Derivation> premises;
  std::vector<AppAlign> alignment;

  const Term& subject() const { return judgment.subject; }
  const ParType& type() const { return judgment.type; }
  const Context& ctx() const { return judgment.ctx; }
};

/// Rule violation at `path` (premise indices from the root).
class CheckError : public std::runtime_error {
 public:
  CheckError(std::vector<std::size_t> path, const std::string& msg);
  const std::vector<std::size_t>& path() const { return path_; }

 private:
  std::vector<std::size_t> path_;
};

/// Verifies every node bottom-up and returns the root judgment.
Judgment check(const Derivation& d);

/// Sum over elimination nodes of (sum of 2n_i) - 1, plus one per choice node.
std::size_t measure(const Derivation& d);

// Node builders; each computes its conclusion from the premises.
Derivation make_ax(const std::string& x, const CompType& t);
/// Premises are stored in canonical order.
Derivation make_lam(const std::string& binder, const Term& body, std::vector<Derivation> premises);
Derivation make_app(Derivation principal, std::vector<Derivation> args, std::vector<AppAlign> alignment);
/// Argument i consumes the principal component equal to `components[i]`.
/// Indices are assigned greedily by value and arguments are put in canonical
/// order.
Derivation make_app_by_value(Derivation principal, std::vector<Derivation> args,
                             const std::vector<CompType>& components);
Derivation make_plus(DRule side, Derivation premise, const Term& other);
Derivation make_par(Derivation left, Derivation right);

/// The measure-0 derivation of |- V : 1.
Derivation unit_value_derivation(const Term& v);

/// Splits a derivation of a value along a decomposition of its tensor type.
/// Measures add up.
std::vector<Derivation> split_value_derivation(const Derivation& d, const std::vector<CompType>& blocks);
/// Converse of split_value_derivation: contexts and types are tensored.
Derivation join_value_derivations(const std::vector<Derivation>& parts);

/// From D, x:t |- M : a and G |- V : t builds D (x) G |- M[V/x] : a with
/// measure |d1| + |d2|.
Derivation substitute_derivation(const Derivation& d1, const std::string& x, const Derivation& d2);

/// Renames the free variable x to the fresh name y throughout.
Derivation rename_free(const Derivation& d, const std::string& x, const std::string& y);

/// Structural identity string: rules, judgments (subjects up to alpha) and
/// alignments, node by node.
std::string fingerprint(const Derivation& d);

std::size_t derivation_height(const Derivation& d);

}  // namespace llv
