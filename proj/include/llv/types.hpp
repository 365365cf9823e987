#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llv {

struct Arrow;

/// Tensor of arrows, kept sorted. The empty tensor is 1.
struct CompType {
  std::vector<Arrow> arrows;

  static CompType one() { return {}; }
  bool is_one() const { return arrows.empty(); }
  void normalize();
};

/// Nonempty par of computational types, kept sorted.
struct ParType {
  std::vector<CompType> comps;

  static ParType of(CompType c);
  /// The par of k copies of 1.
  static ParType units(std::size_t k);
  std::size_t arity() const { return comps.size(); }
  bool is_comp() const { return comps.size() == 1; }
  void normalize();
};

struct Arrow {
  CompType dom;
  ParType cod;
};

std::strong_ordering operator<=>(const CompType& a, const CompType& b);
std::strong_ordering operator<=>(const ParType& a, const ParType& b);
std::strong_ordering operator<=>(const Arrow& a, const Arrow& b);
bool operator==(const CompType& a, const CompType& b);
bool operator==(const ParType& a, const ParType& b);
bool operator==(const Arrow& a, const Arrow& b);

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CompType tensor(const CompType& a, const CompType& b);
ParType par(const ParType& a, const ParType& b);

/// Variables map to computational types; 1 entries are never stored.
using Context = std::map<std::string, CompType>;

CompType ctx_lookup(const Context& g, const std::string& x);
Context tensor_ctx(const Context& a, const Context& b);
Context ctx_single(const std::string& x, const CompType& t);
Context ctx_without(Context g, const std::string& x);

/// Number of connectives: each arrow counts one, a tensor of n arrows adds
/// n-1 and a par of k components adds k-1. So 1 has size 0 and both 1%1 and
/// 1 -o 1 have size 1.
std::size_t type_size(const CompType& t);
std::size_t type_size(const ParType& t);
std::size_t type_size(const Arrow& t);

ParType parse_type(std::string_view text);
/// Like parse_type but requires a single computational type.
CompType parse_comp_type(std::string_view text);
std::string print_type(const ParType& t);
std::string print_type(const CompType& t);
std::string print_context(const Context& g);

/// Ordered n-way splits of the tensor: every tuple tensors back to t.
std::vector<std::vector<CompType>> split_comp(const CompType& t, std::size_t n);
std::vector<std::vector<Context>> split_ctx(const Context& g, std::size_t n);

/// Every type of size at most max_size, once each, ordered by size and then
/// by the structural order.
std::vector<ParType> enumerate_types(std::size_t max_size);
std::vector<CompType> enumerate_comp_types(std::size_t max_size);

/// Finite multisets and pairs: the image of the injections into the
/// relational universe.
struct NestedMultiset {
  bool is_pair = false;
  std::vector<NestedMultiset> items;  // two items when is_pair

};

std::strong_ordering operator<=>(const NestedMultiset& a, const NestedMultiset& b);
bool operator==(const NestedMultiset& a, const NestedMultiset& b);

NestedMultiset encode_type(const ParType& t);
NestedMultiset encode_comp(const CompType& t);
std::string print_nested(const NestedMultiset& m);

}  // namespace llv
