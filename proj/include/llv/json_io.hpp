#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "llv/derivation.hpp"
#include "llv/reduction.hpp"
#include "llv/semantics.hpp"
#include "llv/transform.hpp"

namespace llv {

using json = nlohmann::ordered_json;

/// Malformed document: missing fields, wrong kinds, unparsable terms or types.
class JsonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {rule, judgment:{ctx:[{var,type}], term, type}, alignment?, premises:[...]}.
json derivation_to_json(const Derivation& d);
/// Rebuilds the tree as written. Nothing is checked here; pass the result to
/// check().
Derivation derivation_from_json(const json& j);

/// {start, steps:[{rule, path, result}]}.
json trace_to_json(const Trace& t);
Trace trace_from_json(const json& j);

/// {nodes:[{id, term, normal, layer}], edges:[{src, rule, path, dst}], exhausted}.
json graph_to_json(const ReductionGraph& g);

json interp_to_json(const InterpApprox& a);
json separation_to_json(const SeparationReport& r);
json search_bounds_to_json(const SearchBounds& b);

json read_json_file(const std::string& path);

/// The shipped worked derivation of |- D (I || \x y.Omega) : 1 % 1.
std::string_view builtin_worked_text();

}  // namespace llv
