// One line per acceptance criterion. Each criterion runs through the suite
// and, where a second opinion is cheap, against an oracle written here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "llv/reduction.hpp"
#include "llv/search.hpp"
#include "llv/suite.hpp"

using namespace llv;

namespace {

constexpr std::size_t kMaxPath = 40;

/// Lengths of all reduction paths of at most kMaxPath steps from m to a
/// parallel composition of k values, by plain depth-first enumeration.
void path_lengths(const Term& m, std::size_t k, std::size_t depth, std::set<std::size_t>& out) {
  auto vals = parallel_values(m);
  if (vals) {
    if (vals->size() == k) out.insert(depth);
    return;
  }
  if (depth == kMaxPath) return;
  for (const auto& [label, n] : step(m)) path_lengths(n, k, depth + 1, out);
}

/// Normal forms reachable from m within kMaxPath steps, by the same
/// enumeration.
void path_normal_forms(const Term& m, std::size_t depth, std::set<std::string>& out) {
  auto r = step(m);
  if (r.empty()) {
    out.insert(canonical_key(m));
    return;
  }
  if (depth == kMaxPath) return;
  for (const auto& [label, n] : r) path_normal_forms(n, depth + 1, out);
}

std::string oracle_exact_length() {
  // Lengths worked out by hand from the reduction rules.
  const std::map<std::string, std::pair<std::size_t, std::set<std::size_t>>> expected = {
      {"ParRedex", {2, {5}}}, {"DupPar", {2, {2}}}, {"DupSum", {2, {5}}},
      {"FS", {1, {8}}},       {"XIX", {2, {9}}},    {"II", {1, {1}}},
  };
  const Corpus& c = builtin_corpus();
  for (const auto& [name, kl] : expected) {
    const auto& [k, lengths] = kl;
    std::set<std::size_t> paths;
    path_lengths(c.at(name), k, 0, paths);
    if (paths != lengths) return name + ": path enumeration disagrees with the hand count";
    SearchBounds b{16, 64, 3, 1000};
    std::set<std::size_t> measures;
    for (const auto& [d, mu] : unit_typings(c.at(name), k, b)) measures.insert(mu);
    if (measures != lengths) return name + ": measures disagree with the hand count";
  }
  return "";
}

std::string oracle_behaviour() {
  const Corpus& c = builtin_corpus();
  std::set<std::string> fs, dup, b1, b2;
  path_normal_forms(c.at("FS"), 0, fs);
  if (fs != std::set<std::string>{canonical_key(parse_term("\\x.x"))}) return "FS does not reach exactly I";
  path_normal_forms(c.at("DupSum"), 0, dup);
  if (dup != std::set<std::string>{canonical_key(parse_term("(\\x.x) || \\x.x x"))}) return "DupSum normal forms";
  path_normal_forms(c.at("Bilin"), 0, b1);
  path_normal_forms(c.at("BilinSum"), 0, b2);
  if (b1 != b2 || b1.empty()) return "bilinearity normal forms differ";
  return "";
}

struct Limit {
  const char* id;
  double seconds;
  std::function<std::string()> oracle;
};

}  // namespace

int main() {
  const Limit limits[] = {
      {"1", 1, nullptr},   {"2", 60, oracle_exact_length}, {"3", 30, nullptr},  {"4", 300, nullptr},
      {"5", 120, nullptr}, {"6", 30, oracle_behaviour},    {"7", 300, nullptr}, {"8", 120, nullptr},
  };
  SuiteOptions o = default_suite_options();
  bool all = true;
  for (const auto& l : limits) {
    CriterionResult r = run_criterion("paper", l.id, o);
    bool ok = r.status == Status::Pass;
    std::string why = r.details;
    if (ok && r.seconds > l.seconds) {
      ok = false;
      why = "took " + std::to_string(r.seconds) + "s, limit " + std::to_string(l.seconds) + "s";
    }
    if (ok && l.oracle) {
      try {
        std::string e = l.oracle();
        if (!e.empty()) {
          ok = false;
          why = "oracle: " + e;
        }
      } catch (const std::exception& e) {
        ok = false;
        why = std::string("oracle: ") + e.what();
      }
    }
    all = all && ok;
    std::printf("criterion %s: %s  %s (%.2fs) %s\n", l.id, ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds, why.c_str());
  }
  return all ? 0 : 1;
}
