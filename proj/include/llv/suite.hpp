#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "llv/json_io.hpp"
#include "llv/syntax.hpp"

namespace llv {

enum class Status { Pass, Fail, Skipped };

std::string status_name(Status s);

struct CriterionResult {
  std::string id;
  std::string title;
  Status status = Status::Skipped;
  std::string details;
  double seconds = 0;
};

struct SuiteResult {
  std::string name;
  std::vector<CriterionResult> items;

  bool ok() const;
  json to_json() const;
  /// One line per item: "[pass] 1 title (0.12s): details".
  std::string render() const;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteOptions {
  Corpus corpus = builtin_corpus();
  std::vector<Term> pool;
  /// Text of the worked derivation document.
  std::string worked;
  /// Enumeration size for the properties suite.
  std::size_t size = 7;
  std::uint64_t seed = 20240229;
  bool parallel = true;
};

/// Shipped corpus, pool and worked derivation.
SuiteOptions default_suite_options();

std::vector<std::string> suite_names();
/// Criteria ids of a suite, in reporting order. Throws UsageError for an
/// unknown suite.
std::vector<std::string> suite_criteria(const std::string& suite);
CriterionResult run_criterion(const std::string& suite, const std::string& id, const SuiteOptions& o);
SuiteResult run_suite(const std::string& suite, const SuiteOptions& o);

}  // namespace llv
