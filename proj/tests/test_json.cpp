#include <doctest.h>

#include "fixtures.hpp"
#include "llv/json_io.hpp"
#include "llv/search.hpp"

using namespace llv;
using namespace llv::fixtures;

namespace {

const std::string kCorpusDir = std::string(LLV_SOURCE_DIR) + "/corpus/";

Derivation round_trip(const Derivation& d) { return derivation_from_json(json::parse(derivation_to_json(d).dump())); }

}  // namespace

TEST_CASE("the shipped worked derivation") {
  Derivation d = derivation_from_json(read_json_file(kCorpusDir + "worked.json"));
  Judgment j = check(d);
  CHECK(j.ctx.empty());
  CHECK(alpha_eq(j.subject, T("D (I || \\x y.Omega)")));
  CHECK(j.type == ParType::units(2));
  CHECK(measure(d) == 5);
  CHECK(fingerprint(d) == fingerprint(worked_pi()));
}

TEST_CASE("derivations survive a round trip") {
  std::vector<Derivation> ds = {worked_pi(), worked_pi_prime(), self_app(), delta_once(), id_unit(), k_omega()};
  for (const char* src : {"DupPar", "DupSum", "Bilin", "S", "XIX"}) {
    for (auto& d : search_any(Context{}, builtin_corpus().at(src), SearchBounds{8, 64, 2, 5})) ds.push_back(d);
  }
  for (const auto& d : ds) {
    Derivation e = round_trip(d);
    CHECK(same_judgment(check(e), d.judgment));
    CHECK(fingerprint(e) == fingerprint(d));
    CHECK(measure(e) == measure(d));
  }
}

TEST_CASE("the checker recomputes instead of trusting the document") {
  json j = derivation_to_json(worked_pi());
  SUBCASE("root type") {
    j["judgment"]["type"] = "1";
    CHECK_THROWS_AS(check(derivation_from_json(j)), CheckError);
  }
  SUBCASE("premise context") {
    j["premises"][0]["premises"][0]["judgment"]["ctx"][0]["type"] = "1 -o (1 % 1)";
    CHECK_THROWS_AS(check(derivation_from_json(j)), CheckError);
  }
  SUBCASE("alignment") {
    j["alignment"][0]["pairing"] = json::array({0, 0});
    CHECK_THROWS_AS(check(derivation_from_json(j)), CheckError);
  }
  SUBCASE("subject") {
    j["judgment"]["term"] = "(\\x.x x) (\\x.x)";
    CHECK_THROWS_AS(check(derivation_from_json(j)), CheckError);
  }
}

TEST_CASE("malformed derivation documents") {
  json good = derivation_to_json(id_unit());
  CHECK_NOTHROW(derivation_from_json(good));
  json j = good;
  j.erase("premises");
  CHECK_THROWS_AS(derivation_from_json(j), JsonError);
  j = good;
  j["rule"] = "cut";
  CHECK_THROWS_AS(derivation_from_json(j), JsonError);
  j = good;
  j["judgment"]["term"] = "\\x.";
  CHECK_THROWS_AS(derivation_from_json(j), JsonError);
  j = good;
  j["judgment"]["type"] = "1 -o";
  CHECK_THROWS_AS(derivation_from_json(j), JsonError);
  j = good;
  j["judgment"]["ctx"] = json::array({json{{"var", "x"}, {"type", "1 % 1"}}});
  CHECK_THROWS_AS(derivation_from_json(j), JsonError);
  CHECK_THROWS_AS(read_json_file(kCorpusDir + "missing.json"), JsonError);
}

TEST_CASE("traces") {
  Trace t{T("(\\x.(x + x)) (I || D)"), {}};
  Term cur = t.start;
  while (!is_normal(cur)) {
    auto r = step(cur);
    t.steps.push_back(TraceStep{r[0].first, r[0].second});
    cur = r[0].second;
  }
  json j = trace_to_json(t);
  CHECK(j["steps"].size() == t.length());
  CHECK(j["steps"][0]["rule"] == "ParAppR");
  Trace back = trace_from_json(json::parse(j.dump()));
  CHECK_NOTHROW(validate_trace(back));
  REQUIRE(back.length() == t.length());
  for (std::size_t i = 0; i < t.length(); ++i) {
    CHECK(back.steps[i].label == t.steps[i].label);
    CHECK(alpha_eq(back.steps[i].result, t.steps[i].result));
  }
  json bad = j;
  bad["steps"][0]["path"] = json::array({2});
  CHECK_THROWS_AS(trace_from_json(bad), JsonError);
  bad = j;
  bad["steps"][0]["rule"] = "Eta";
  CHECK_THROWS_AS(trace_from_json(bad), JsonError);
}

TEST_CASE("reduction graphs") {
  ReductionGraph g = explore(T("DupSum"));
  json j = graph_to_json(g);
  CHECK(j["exhausted"] == true);
  CHECK(j["nodes"].size() == g.nodes.size());
  CHECK(j["edges"].size() == g.edges.size());
  CHECK(j["nodes"][0]["layer"] == 0);
  std::size_t normals = 0;
  for (const auto& n : j["nodes"]) normals += n["normal"].get<bool>();
  CHECK(normals == g.normal_nodes().size());
  CHECK(j.dump() == graph_to_json(explore(T("DupSum"))).dump());
}

TEST_CASE("semantic reports carry their bounds") {
  auto a = interp(T("I"), 2, interp_search_defaults());
  json j = interp_to_json(a);
  CHECK(j["type_size"] == 2);
  CHECK(j["search"]["type_size"] == interp_search_defaults().max_type_size);
  CHECK(j["types"].size() == a.types.size());
  ObsParams p;
  p.pool = default_pool();
  p.max_args = 1;
  json r = separation_to_json(obs_check(T("FS"), T("FSp"), p));
  CHECK(r["verdict"] == "Separated");
  CHECK(r["witness"].empty());
  CHECK(r["converging"] == "first");
  CHECK(r["pool"].size() == 5);
}

TEST_CASE("the embedded worked derivation matches the file") {
  CHECK(json::parse(builtin_worked_text()) == read_json_file(kCorpusDir + "worked.json"));
}
