#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "llv/term.hpp"

namespace llv {

/// Parse failure carrying the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Resource bounds attached to a corpus entry with an `@bounds` pragma.
/// Keys are free-form (`type-size`, `depth`, `max-k`, `fuel`, `states`, ...).
using BoundsPragma = std::map<std::string, long>;

/// Ordered named terms. Identifiers starting with an uppercase letter refer
/// to corpus entries and are inlined at parse time; lowercase identifiers are
/// variables.
class Corpus {
 public:
  void define(const std::string& name, Term t);
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const Term& at(const std::string& name) const;
  const std::vector<std::pair<std::string, Term>>& entries() const { return entries_; }

  void set_bounds(const std::string& name, BoundsPragma b) { bounds_[name] = std::move(b); }
  /// Pragma value for `name`, or `fallback` when absent.
  long bound(const std::string& name, const std::string& key, long fallback) const;

 private:
  std::vector<std::pair<std::string, Term>> entries_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, BoundsPragma> bounds_;
};

Term parse_term(std::string_view text, const Corpus& corpus = Corpus{});

/// Reads `let <Name> = <term> ;` bindings, `#` comments and
/// `@bounds <Name> key=value ...` pragmas.
Corpus parse_corpus(std::string_view text);
Corpus load_corpus_file(const std::string& path);

/// The corpus shipped with the tool.
const Corpus& builtin_corpus();
std::string_view builtin_corpus_text();

/// Concrete syntax that parses back to an alpha-equivalent term.
std::string print_term(const Term& t);

}  // namespace llv
