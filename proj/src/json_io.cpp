#include "llv/json_io.hpp"

#include <fstream>

#include "llv/syntax.hpp"

namespace llv {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw JsonError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw JsonError(std::string("field '") + key + "' must be an array");
  return v;
}

std::size_t index_value(const json& v) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0)) {
    throw JsonError("expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Term term_value(const std::string& s) {
  try {
    return parse_term(s);
  } catch (const ParseError& e) {
    throw JsonError("bad term '" + s + "': " + e.what());
  }
}

ParType type_value(const std::string& s) {
  try {
    return parse_type(s);
  } catch (const TypeError& e) {
    throw JsonError("bad type '" + s + "': " + e.what());
  }
}

json path_to_json(const Path& p) {
  json a = json::array();
  for (int i : p) a.push_back(i);
  return a;
}

Path path_from_json(const json& j) {
  if (!j.is_array()) throw JsonError("a path must be an array");
  Path p;
  for (const auto& v : j) {
    std::size_t i = index_value(v);
    if (i > 1) throw JsonError("path entries are 0 or 1");
    p.push_back(static_cast<int>(i));
  }
  return p;
}

Rule rule_value(const std::string& s) {
  try {
    return rule_from_name(s);
  } catch (const std::exception&) {
    throw JsonError("unknown reduction rule '" + s + "'");
  }
}

}  // namespace

json derivation_to_json(const Derivation& d) {
  json ctx = json::array();
  for (const auto& [x, t] : d.ctx()) ctx.push_back(json{{"var", x}, {"type", print_type(t)}});
  json out;
  out["rule"] = drule_name(d.rule);
  out["judgment"] = json{{"ctx", ctx}, {"term", print_term(d.subject())}, {"type", print_type(d.type())}};
  if (d.rule == DRule::App) {
    json al = json::array();
    for (const auto& a : d.alignment) {
      json pairing = json::array();
      for (auto p : a.pairing) pairing.push_back(p);
      al.push_back(json{{"component", a.component}, {"pairing", pairing}});
    }
    out["alignment"] = al;
  }
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(derivation_to_json(p));
  out["premises"] = ps;
  return out;
}

Derivation derivation_from_json(const json& j) {
  DRule rule;
  try {
    rule = drule_from_name(string_field(j, "rule"));
  } catch (const JsonError&) {
    throw;
  } catch (const std::exception&) {
    throw JsonError("unknown typing rule '" + string_field(j, "rule") + "'");
  }
  const json& jj = field(j, "judgment");
  Context ctx;
  for (const auto& e : array_field(jj, "ctx")) {
    ParType t = type_value(string_field(e, "type"));
    if (!t.is_comp()) throw JsonError("context types must be computational");
    std::string x = string_field(e, "var");
    if (ctx.count(x)) throw JsonError("variable '" + x + "' bound twice in a context");
    if (!t.comps[0].is_one()) ctx.emplace(x, t.comps[0]);
  }
  Derivation d{rule, Judgment{std::move(ctx), term_value(string_field(jj, "term")), type_value(string_field(jj, "type"))},
               {}, {}};
  for (const auto& p : array_field(j, "premises")) d.premises.push_back(derivation_from_json(p));
  if (j.contains("alignment")) {
    for (const auto& a : array_field(j, "alignment")) {
      AppAlign al;
      al.component = index_value(field(a, "component"));
      for (const auto& v : array_field(a, "pairing")) al.pairing.push_back(index_value(v));
      d.alignment.push_back(std::move(al));
    }
  }
  return d;
}

json trace_to_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back(json{{"rule", rule_name(s.label.rule)}, {"path", path_to_json(s.label.path)}, {"result", print_term(s.result)}});
  }
  return json{{"start", print_term(t.start)}, {"steps", steps}};
}

Trace trace_from_json(const json& j) {
  Trace t{term_value(string_field(j, "start")), {}};
  for (const auto& s : array_field(j, "steps")) {
    t.steps.push_back(TraceStep{StepLabel{rule_value(string_field(s, "rule")), path_from_json(field(s, "path"))},
                                term_value(string_field(s, "result"))});
  }
  return t;
}

json graph_to_json(const ReductionGraph& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    nodes.push_back(json{{"id", i}, {"term", print_term(n.term)}, {"normal", n.normal}, {"layer", n.layer}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back(json{{"src", e.src}, {"rule", rule_name(e.label.rule)}, {"path", path_to_json(e.label.path)}, {"dst", e.dst}});
  }
  return json{{"nodes", nodes}, {"edges", edges}, {"exhausted", g.exhausted}};
}

json search_bounds_to_json(const SearchBounds& b) {
  return json{{"type_size", b.max_type_size}, {"depth", b.max_depth}, {"max_k", b.max_k}, {"max_results", b.max_results}};
}

json interp_to_json(const InterpApprox& a) {
  json types = json::array();
  for (const auto& t : a.types) types.push_back(print_type(t));
  return json{{"term", print_term(a.subject)},
              {"type_size", a.type_bound},
              {"search", search_bounds_to_json(a.search)},
              {"types", types}};
}

json separation_to_json(const SeparationReport& r) {
  json pool = json::array();
  for (const auto& t : r.pool) pool.push_back(print_term(t));
  json witness = json::array();
  for (const auto& w : r.witness) witness.push_back(print_term(w));
  json out{{"first", print_term(r.m)},
           {"second", print_term(r.n)},
           {"max_args", r.max_args},
           {"pool", pool},
           {"vectors_tried", r.vectors_tried},
           {"verdict", r.separated ? "Separated" : "NotSeparatedWithinBounds"}};
  if (r.separated) {
    out["witness"] = witness;
    out["converging"] = r.m_converges ? "first" : "second";
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonError(path + ": " + e.what());
  }
}

}  // namespace llv
