#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llv/reduction.hpp"
#include "llv/search.hpp"
#include "llv/syntax.hpp"
#include "llv/types.hpp"

namespace llv {

/// Bounded approximation of the set of types of a closed term: every type of
/// size at most type_bound that has a derivation within `search`.
struct InterpApprox {
  Term subject;
  std::size_t type_bound = 0;
  SearchBounds search;
  std::vector<ParType> types;

  bool contains(const ParType& t) const;
  bool subset_of(const InterpApprox& other) const;
};

InterpApprox interp(const Term& m, std::size_t type_bound, const SearchBounds& b);

/// Internal search bounds for interp. Judgments inside a derivation are much
/// larger than its conclusion: FS needs size 60 for (1 -o 1) * (1 -o 1) * (1 -o 1).
SearchBounds interp_search_defaults();

/// A tensor of arrows 1 -o a_i with every a_i again of this form (1 itself
/// included).
bool is_ogre_type(const ParType& t);

/// Y* = D* D* with D* = \x y.x x.
Term ogre();
/// Y* has exactly one reduct, by beta, and it is \y.Y*.
bool check_ogre_unfolding();

struct ObsParams {
  std::vector<Term> pool;
  std::size_t max_args = 2;
  std::size_t max_steps = 200;
  std::size_t max_states = 10000;
  /// Also look for arguments making n converge and m diverge.
  bool both_directions = false;
};

/// I, D, \x.Omega, \x y.x and \z.(I || I), from the shipped pool file.
std::vector<Term> default_pool();
std::string_view builtin_pool_text();
/// Every entry of a corpus file, in order.
std::vector<Term> pool_from_corpus(const Corpus& c);

struct SeparationReport {
  Term m, n;
  std::size_t max_args = 0;
  std::vector<Term> pool;
  std::size_t vectors_tried = 0;
  bool separated = false;
  std::vector<Term> witness;
  /// True when m applied to the witness converges and n applied to it
  /// diverges; false for the reverse direction.
  bool m_converges = true;
};

/// Looks for argument vectors (length up to max_args, drawn from the pool)
/// on which m converges and n provably diverges. Unknown verdicts never
/// separate.
SeparationReport obs_check(const Term& m, const Term& n, const ObsParams& p);

struct AdequacyReport {
  bool holds = true;
  bool inclusion = false;
  /// A type of m missing from n when the inclusion fails.
  std::optional<ParType> missing;
  std::optional<SeparationReport> separation;
};

/// Fails only when the bounded interpretation of m is included in that of n
/// and yet some arguments make m converge and n diverge.
AdequacyReport adequacy_check(const InterpApprox& im, const InterpApprox& in, const ObsParams& p);

std::string describe(const SeparationReport& r);

}  // namespace llv
