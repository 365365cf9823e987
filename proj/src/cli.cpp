#include "llv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "llv/json_io.hpp"
#include "llv/reduction.hpp"
#include "llv/search.hpp"
#include "llv/semantics.hpp"
#include "llv/suite.hpp"
#include "llv/syntax.hpp"
#include "llv/transform.hpp"

namespace llv {

namespace {

struct Globals {
  std::string corpus_file;
  bool json = false;
  std::uint64_t seed = SuiteOptions{}.seed;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  const Corpus& corpus() {
    if (!corpus_) corpus_ = g_.corpus_file.empty() ? builtin_corpus() : load_corpus_file(g_.corpus_file);
    return *corpus_;
  }
  Term term(const std::string& s) { return parse_term(s, corpus()); }
  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  int cmd_parse();
  int cmd_reduce();
  int cmd_check();
  int cmd_infer();
  int cmd_run();
  int cmd_expand();
  int cmd_interp();
  int cmd_obs();
  int cmd_verify();

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  std::optional<Corpus> corpus_;

  std::string term_a_, term_b_, file_, type_, graph_file_, pool_file_, suite_, criterion_;
  std::size_t fuel_ = 200, states_ = 10000, k_ = 0, args_ = 2, type_size_ = 4, size_ = 7;
  SearchBounds bounds_;
  std::size_t interp_search_ = interp_search_defaults().max_type_size;
  bool guided_ = false, trace_ = false, both_ = false, sequential_ = false;
};

int Cli::cmd_parse() {
  Term t = term(term_a_);
  auto fv = free_vars(t);
  if (g_.json) {
    json free = json::array();
    for (const auto& x : fv) free.push_back(x);
    emit(json{{"term", print_term(t)}, {"size", t.size()}, {"free", free}, {"value", is_value(t)}, {"key", canonical_key(t)}});
    return kExitOk;
  }
  out_ << print_term(t) << "\n";
  out_ << "size " << t.size() << ", " << (is_value(t) ? "value" : "not a value");
  if (fv.empty()) {
    out_ << ", closed\n";
  } else {
    out_ << ", free:";
    for (const auto& x : fv) out_ << " " << x;
    out_ << "\n";
  }
  return kExitOk;
}

int Cli::cmd_reduce() {
  Term t = term(term_a_);
  ReductionGraph g = explore(t, fuel_, states_);
  if (!graph_file_.empty()) {
    std::ofstream f(graph_file_);
    if (!f) throw JsonError("cannot write " + graph_file_);
    f << graph_to_json(g).dump(2) << "\n";
  }
  std::string verdict = !g.normal_nodes().empty() ? "Converges" : g.exhausted ? "Diverges" : "Unknown";
  if (g_.json) {
    json nfs = json::array();
    for (auto n : g.normal_nodes()) nfs.push_back(json{{"term", print_term(g.nodes[n].term)}, {"distance", g.nodes[n].layer}});
    emit(json{{"term", print_term(t)}, {"verdict", verdict}, {"states", g.nodes.size()}, {"exhausted", g.exhausted},
              {"normal_forms", nfs}});
    return kExitOk;
  }
  out_ << verdict << "\n";
  out_ << g.nodes.size() << " states, " << (g.exhausted ? "exhausted" : "not exhausted") << "\n";
  for (auto n : g.normal_nodes()) out_ << "  " << print_term(g.nodes[n].term) << "  (" << g.nodes[n].layer << " steps)\n";
  return kExitOk;
}

int Cli::cmd_check() {
  Derivation d = derivation_from_json(read_json_file(file_));
  try {
    Judgment j = check(d);
    if (g_.json) {
      emit(json{{"ok", true}, {"judgment", print_judgment(j)}, {"measure", measure(d)}});
    } else {
      out_ << print_judgment(j) << "\nmeasure " << measure(d) << "\n";
    }
    return kExitOk;
  } catch (const CheckError& e) {
    if (g_.json) {
      json path = json::array();
      for (auto i : e.path()) path.push_back(i);
      emit(json{{"ok", false}, {"node", path}, {"error", e.what()}});
    } else {
      err_ << "check failed " << e.what() << "\n";
    }
    return kExitFailure;
  }
}

int Cli::cmd_infer() {
  Term t = term(term_a_);
  std::vector<std::pair<Derivation, std::size_t>> found;
  SearchStats st;
  if (!type_.empty()) {
    for (auto& d : search(Context{}, t, parse_type(type_), bounds_, &st)) found.emplace_back(d, measure(d));
  } else if (k_ > 0) {
    found = unit_typings(t, k_, bounds_);
  } else {
    for (auto& d : search_any(Context{}, t, bounds_, &st)) found.emplace_back(d, measure(d));
  }
  if (g_.json) {
    json ds = json::array();
    for (const auto& [d, mu] : found) {
      ds.push_back(json{{"type", print_type(d.type())}, {"measure", mu}, {"derivation", derivation_to_json(d)}});
    }
    emit(json{{"term", print_term(t)}, {"bounds", search_bounds_to_json(bounds_)}, {"truncated", st.truncated},
              {"derivations", ds}});
  } else {
    for (const auto& [d, mu] : found) out_ << print_type(d.type()) << "  measure " << mu << "\n";
    out_ << found.size() << " derivation" << (found.size() == 1 ? "" : "s") << (st.truncated ? " (truncated)" : "")
         << "\n";
  }
  return found.empty() ? kExitFailure : kExitOk;
}

int Cli::cmd_run() {
  if (!guided_) throw CLI::ValidationError("run", "only --guided runs are supported");
  Derivation d = derivation_from_json(read_json_file(file_));
  check(d);
  emit(trace_to_json(guided_run(d)));
  return kExitOk;
}

int Cli::cmd_expand() {
  if (!trace_) throw CLI::ValidationError("expand", "expand needs --trace");
  Trace t = trace_from_json(read_json_file(file_));
  Derivation d = type_via_trace(t);
  check(d);
  emit(derivation_to_json(d));
  return kExitOk;
}

int Cli::cmd_interp() {
  Term t = term(term_a_);
  SearchBounds b = interp_search_defaults();
  b.max_type_size = interp_search_;
  InterpApprox a = interp(t, type_size_, b);
  if (g_.json) {
    emit(interp_to_json(a));
    return kExitOk;
  }
  out_ << a.types.size() << " types of size at most " << type_size_ << " (search size " << interp_search_ << ")\n";
  for (const auto& ty : a.types) out_ << "  " << print_type(ty) << "\n";
  return kExitOk;
}

int Cli::cmd_obs() {
  ObsParams p;
  p.pool = pool_file_.empty() ? default_pool() : pool_from_corpus(load_corpus_file(pool_file_));
  p.max_args = args_;
  p.max_steps = fuel_;
  p.max_states = states_;
  p.both_directions = both_;
  SeparationReport r = obs_check(term(term_a_), term(term_b_), p);
  if (g_.json) {
    emit(separation_to_json(r));
  } else {
    out_ << describe(r) << "\n";
  }
  return kExitOk;
}

int Cli::cmd_verify() {
  SuiteOptions o = default_suite_options();
  o.corpus = corpus();
  o.size = size_;
  o.seed = g_.seed;
  o.parallel = !sequential_;
  SuiteResult r;
  if (criterion_.empty()) {
    r = run_suite(suite_, o);
  } else {
    r = SuiteResult{suite_, {run_criterion(suite_, criterion_, o)}};
  }
  if (g_.json) {
    emit(r.to_json());
  } else {
    out_ << r.render();
  }
  return r.ok() ? kExitOk : kExitFailure;
}

int Cli::run(const std::vector<std::string>& args) {
  CLI::App app{"Workbench for a call-by-value lambda calculus with choice and parallel composition", "llv"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--corpus", g_.corpus_file, "Corpus file replacing the shipped one")->check(CLI::ExistingFile);
  app.add_flag("--json", g_.json, "Machine-readable output");
  app.add_option("--seed", g_.seed, "Seed for randomized properties");

  auto* parse = app.add_subcommand("parse", "Parse and print a term");
  parse->add_option("term", term_a_, "Term")->required();

  auto* reduce = app.add_subcommand("reduce", "Explore every reduction path");
  reduce->add_option("term", term_a_, "Closed term")->required();
  reduce->add_option("--fuel", fuel_, "Maximum number of steps");
  reduce->add_option("--states", states_, "Maximum number of distinct terms");
  reduce->add_option("--graph", graph_file_, "Write the reduction graph as JSON");

  auto* check_cmd = app.add_subcommand("check", "Check a derivation and print its measure");
  check_cmd->add_option("derivation", file_, "Derivation JSON")->required();

  auto* infer = app.add_subcommand("infer", "Search derivations of a closed term");
  infer->add_option("term", term_a_, "Closed term")->required();
  infer->add_option("--type", type_, "Conclusion type");
  infer->add_option("--k", k_, "Type 1 % ... % 1 with k components");
  infer->add_option("--type-size", bounds_.max_type_size, "Largest type in any judgment");
  infer->add_option("--depth", bounds_.max_depth, "Largest derivation height");
  infer->add_option("--max-k", bounds_.max_k, "Largest guessed par arity");
  infer->add_option("--max-results", bounds_.max_results, "Stop after this many derivations");

  auto* run_cmd = app.add_subcommand("run", "Reduce along a derivation");
  run_cmd->add_flag("--guided", guided_, "Follow the derivation");
  run_cmd->add_option("derivation", file_, "Derivation JSON")->required();

  auto* expand = app.add_subcommand("expand", "Type a term by expanding backwards along a trace");
  expand->add_flag("--trace", trace_, "Input is a trace");
  expand->add_option("file", file_, "Trace JSON")->required();

  auto* interp_cmd = app.add_subcommand("interp", "Bounded set of types of a closed term");
  interp_cmd->add_option("term", term_a_, "Closed term")->required();
  interp_cmd->add_option("--type-size", type_size_, "Largest enumerated type");
  interp_cmd->add_option("--search-size", interp_search_, "Largest type inside the derivations");

  auto* obs = app.add_subcommand("obs", "Look for arguments on which the first term converges and the second diverges");
  obs->add_option("first", term_a_, "Closed term")->required();
  obs->add_option("second", term_b_, "Closed term")->required();
  obs->add_option("--args", args_, "Largest number of arguments");
  obs->add_option("--pool", pool_file_, "Corpus file whose entries are the arguments")->check(CLI::ExistingFile);
  obs->add_option("--fuel", fuel_, "Maximum number of steps");
  obs->add_option("--states", states_, "Maximum number of distinct terms");
  obs->add_flag("--both", both_, "Also look for the reverse direction");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite_, "paper, properties or semantics")->required();
  verify->add_option("--size", size_, "Enumeration size for the properties suite");
  verify->add_option("--criterion", criterion_, "Run a single criterion");
  verify->add_flag("--sequential", sequential_, "Run criteria one after another");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err_ << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse();
    if (reduce->parsed()) return cmd_reduce();
    if (check_cmd->parsed()) return cmd_check();
    if (infer->parsed()) return cmd_infer();
    if (run_cmd->parsed()) return cmd_run();
    if (expand->parsed()) return cmd_expand();
    if (interp_cmd->parsed()) return cmd_interp();
    if (obs->parsed()) return cmd_obs();
    if (verify->parsed()) return cmd_verify();
  } catch (const CLI::Error& e) {
    err_ << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err_ << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TypeError& e) {
    err_ << "type error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const JsonError& e) {
    err_ << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err_ << e.what() << "\n";
    return kExitUsage;
  } catch (const TermError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CheckError& e) {
    err_ << "check failed " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace llv
