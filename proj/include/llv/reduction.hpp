#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "llv/term.hpp"

namespace llv {

/// The five axioms of the machine. Contextual closure is recorded in the
/// path, not in the tag.
enum class Rule { BetaV, PlusL, PlusR, ParAppL, ParAppR };

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& s);

/// A redex position: child indices from the root (0 = left/function/body,
/// 1 = right/argument).
using Path = std::vector<int>;

struct StepLabel {
  Rule rule;
  Path path;

  friend bool operator==(const StepLabel&, const StepLabel&) = default;
};

/// Context rule names along a path: CtxAppL, CtxAppR, CtxParL, CtxParR.
std::vector<std::string> context_rules(const Term& m, const Path& path);

const Term& subterm_at(const Term& m, const Path& path);
Term replace_at(const Term& m, const Path& path, const Term& replacement);

/// All one-step reducts, leftmost-outermost first, PlusL before PlusR.
std::vector<std::pair<StepLabel, Term>> step(const Term& m);

bool is_normal(const Term& m);

/// Flattened components when m is a parallel composition of values.
std::optional<std::vector<Term>> parallel_values(const Term& m);

/// Applies a labelled step; throws TermError when the label does not name a
/// redex of m.
Term apply_step(const Term& m, const StepLabel& label);

struct ReductionGraph {
  struct Node {
    Term term;
    std::size_t layer;
    bool normal;
    bool expanded;
  };
  struct Edge {
    std::size_t src;
    StepLabel label;
    std::size_t dst;
  };

  std::vector<Node> nodes;  // node 0 is the root
  std::vector<Edge> edges;
  bool exhausted = false;
  bool fuel_hit = false;

  std::optional<std::size_t> find(const Term& t) const;
  std::vector<std::size_t> normal_nodes() const;
  std::vector<std::size_t> successors(std::size_t n) const;

 private:
  friend ReductionGraph explore(const Term&, std::size_t, std::size_t);
  std::vector<std::pair<std::string, std::size_t>> index_;  // sorted by key
};

/// Breadth-first exploration up to max_steps layers and max_states distinct
/// terms (up to alpha).
ReductionGraph explore(const Term& m, std::size_t max_steps = 200, std::size_t max_states = 10000);

struct Verdict {
  enum class Kind { Converges, Diverges, Unknown };
  Kind kind = Kind::Unknown;
  /// Normal forms with their minimal distance (Converges only), in BFS order.
  std::vector<std::pair<Term, std::size_t>> normal_forms;

  bool converges() const { return kind == Kind::Converges; }
  bool diverges() const { return kind == Kind::Diverges; }
};

std::string verdict_name(Verdict::Kind k);

/// Requires a closed term.
Verdict converges(const Term& m, std::size_t max_steps = 200, std::size_t max_states = 10000);

/// Lengths of all reductions from the root to a parallel composition of
/// exactly k values. Requires an exhausted graph; throws when a cycle makes
/// the set infinite.
std::set<std::size_t> reduction_lengths(const ReductionGraph& g, std::size_t k);

/// Alpha-classes of the normal forms reachable in the graph.
std::set<std::string> normal_form_keys(const ReductionGraph& g);

}  // namespace llv
