#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "llv/derivation.hpp"

namespace llv {

/// Resource bounds for derivation search. Every judgment type of a returned
/// derivation has size at most max_type_size, its height is at most
/// max_depth, and every par arity guessed (elimination k and n_i, unknown
/// codomains) is at most max_k.
struct SearchBounds {
  std::size_t max_type_size = 16;
  std::size_t max_depth = 64;
  std::size_t max_k = 3;
  std::size_t max_results = 1000;
};

struct SearchStats {
  std::size_t states = 0;
  /// max_results was reached, so the result list may be partial.
  bool truncated = false;
};

/// Checked derivations of g |- m : a, deduplicated by fingerprint.
///
/// The search is backward and syntax-directed. Unknown computational types
/// are metavariables solved by unification modulo associativity,
/// commutativity and unit of the tensor; an abstraction whose type is still
/// open is extended one arrow at a time. Metavariables left unconstrained at
/// the end are set to 1.
std::vector<Derivation> search(const Context& g, const Term& m, const ParType& a, const SearchBounds& b,
                               SearchStats* stats = nullptr);

/// Like search, with the conclusion type also unknown (par arity up to
/// max_k).
std::vector<Derivation> search_any(const Context& g, const Term& m, const SearchBounds& b,
                                   SearchStats* stats = nullptr);

/// Some derivation of |- m : a, preferring a type of the form 1 % ... % 1 and
/// then minimal measure. Empty means "not typable within the bounds".
std::optional<Derivation> typable(const Term& m, const SearchBounds& b);

/// All bounded derivations of |- m : 1 % ... % 1 (k components) with their
/// measures, in order of increasing measure.
std::vector<std::pair<Derivation, std::size_t>> unit_typings(const Term& m, std::size_t k, const SearchBounds& b);

}  // namespace llv
