#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "llv/term.hpp"

namespace llv {

/// Exhaustive term generation up to alpha-equivalence. Size is the node
/// count. Open terms draw free variables from the names a, b, c, ... up to
/// free_budget of them.
struct TermEnumerator {
  std::size_t max_size = 5;
  std::size_t free_budget = 0;
  bool closed = true;
};

/// Calls f on every term of size 1..max_size, by increasing size and in a
/// fixed order within a size.
void for_each_term(const TermEnumerator& e, const std::function<void(const Term&)>& f);
std::vector<Term> enumerate_terms(const TermEnumerator& e);

/// Name of the binder introduced at the given nesting depth.
std::string binder_name(std::size_t depth);

}  // namespace llv
