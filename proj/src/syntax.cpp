#include "llv/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace llv {

void Corpus::define(const std::string& name, Term t) {
  if (contains(name)) throw ParseError("duplicate corpus name '" + name + "'", 0);
  index_[name] = entries_.size();
  entries_.emplace_back(name, std::move(t));
}

const Term& Corpus::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown corpus name '" + name + "'");
  return entries_[it->second].second;
}

long Corpus::bound(const std::string& name, const std::string& key, long fallback) const {
  auto it = bounds_.find(name);
  if (it == bounds_.end()) return fallback;
  auto kv = it->second.find(key);
  return kv == it->second.end() ? fallback : kv->second;
}

namespace {

enum class Tok { Ident, LParen, RParen, Lambda, Dot, Plus, Bar, Equals, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (ident_start(c)) {
      std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '\\') {
      out.push_back({Tok::Lambda, "\\", i++});
    } else if (s.substr(i, 2) == "\xCE\xBB") {  // λ
      out.push_back({Tok::Lambda, "\\", i});
      i += 2;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", i++});
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+", i++});
    } else if (s.substr(i, 2) == "||") {
      out.push_back({Tok::Bar, "||", i});
      i += 2;
    } else if (s.substr(i, 3) == "\xE2\x88\xA5") {  // ∥
      out.push_back({Tok::Bar, "||", i});
      i += 3;
    } else if (c == '=') {
      out.push_back({Tok::Equals, "=", i++});
    } else if (c == ';') {
      out.push_back({Tok::Semi, ";", i++});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class TermParser {
 public:
  TermParser(const std::vector<Token>& toks, std::size_t start, const Corpus& corpus)
      : toks_(toks), i_(start), corpus_(corpus) {}

  Term opchain() {
    Term acc = app();
    std::optional<Tok> op;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Bar) {
      Token t = next();
      if (op && *op != t.kind) throw ParseError("ambiguous operator mixing of '+' and '||'", t.pos);
      op = t.kind;
      Term rhs = app();
      acc = t.kind == Tok::Plus ? Term::sum(acc, rhs) : Term::par(acc, rhs);
    }
    return acc;
  }

  std::size_t index() const { return i_; }
  const Token& peek() const { return toks_[i_]; }

 private:
  Token next() { return toks_[i_++]; }

  bool atom_start() const {
    Tok k = peek().kind;
    return k == Tok::Ident || k == Tok::LParen || k == Tok::Lambda;
  }

  // app := atom+ ; a lambda atom swallows the rest of the chain.
  Term app() {
    if (!atom_start()) throw ParseError("expected a term", peek().pos);
    Term acc = atom();
    while (atom_start()) acc = Term::app(acc, atom());
    return acc;
  }

  Term atom() {
    Token t = next();
    switch (t.kind) {
      case Tok::Ident:
        return identifier(t);
      case Tok::LParen: {
        Term inner = opchain();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        next();
        return inner;
      }
      case Tok::Lambda: {
        std::vector<std::string> binders;
        while (peek().kind == Tok::Ident) {
          Token b = next();
          if (std::isupper(static_cast<unsigned char>(b.text[0]))) {
            throw ParseError("binder '" + b.text + "' must start with a lowercase letter", b.pos);
          }
          binders.push_back(b.text);
        }
        if (binders.empty()) throw ParseError("expected a binder after lambda", peek().pos);
        if (peek().kind != Tok::Dot) throw ParseError("expected '.'", peek().pos);
        next();
        Term body = app();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lam(*it, body);
        return body;
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  Term identifier(const Token& t) {
    if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
      if (!corpus_.contains(t.text)) throw ParseError("unbound corpus name '" + t.text + "'", t.pos);
      return corpus_.at(t.text);
    }
    return Term::var(t.text);
  }

  const std::vector<Token>& toks_;
  std::size_t i_;
  const Corpus& corpus_;
};

// Precedence levels for printing: 0 = operator chain, 1 = application, 2 = atom.
void print_rec(const Term& t, int level, std::string& out);

void print_operand(const Term& t, TermKind op, bool left, std::string& out) {
  bool same_chain = t.is(op) && left;
  if (same_chain) {
    print_rec(t, 0, out);
  } else if (t.is(TermKind::Sum) || t.is(TermKind::Par) || t.is(TermKind::Lam)) {
    out += '(';
    print_rec(t, 0, out);
    out += ')';
  } else {
    print_rec(t, 1, out);
  }
}

void print_rec(const Term& t, int level, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out += t.name();
      return;
    case TermKind::Lam:
      if (level >= 2) {
        out += '(';
        print_rec(t, 0, out);
        out += ')';
        return;
      }
      out += '\\';
      out += t.name();
      out += '.';
      if (t.body().is(TermKind::Sum) || t.body().is(TermKind::Par)) {
        out += '(';
        print_rec(t.body(), 0, out);
        out += ')';
      } else {
        print_rec(t.body(), 1, out);
      }
      return;
    case TermKind::App: {
      if (level >= 2) {
        out += '(';
        print_rec(t, 0, out);
        out += ')';
        return;
      }
      const Term& f = t.left();
      if (f.is(TermKind::App)) {
        print_rec(f, 1, out);
      } else {
        print_rec(f, 2, out);
      }
      out += ' ';
      print_rec(t.right(), 2, out);
      return;
    }
    case TermKind::Sum:
    case TermKind::Par: {
      if (level >= 1) {
        out += '(';
        print_rec(t, 0, out);
        out += ')';
        return;
      }
      print_operand(t.left(), t.kind(), true, out);
      out += t.is(TermKind::Sum) ? " + " : " || ";
      print_operand(t.right(), t.kind(), false, out);
      return;
    }
  }
}

}  // namespace

Term parse_term(std::string_view text, const Corpus& corpus) {
  auto toks = lex(text);
  TermParser p(toks, 0, corpus);
  Term t = p.opchain();
  if (p.peek().kind != Tok::End) throw ParseError("unexpected trailing input", p.peek().pos);
  return t;
}

Corpus parse_corpus(std::string_view text) {
  Corpus corpus;
  // Pragmas are line-oriented; strip them before tokenizing the bindings.
  std::string bindings;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line.compare(first, 7, "@bounds") == 0) {
      std::istringstream ls(line.substr(first + 7));
      std::string name, kv;
      ls >> name;
      if (name.empty()) throw ParseError("@bounds needs a corpus name", offset);
      BoundsPragma b;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("malformed bound '" + kv + "'", offset);
        try {
          b[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
        } catch (const std::exception&) {
          throw ParseError("malformed bound '" + kv + "'", offset);
        }
      }
      corpus.set_bounds(name, std::move(b));
      bindings.append(line.size(), ' ');
    } else {
      bindings += line;
    }
    bindings += '\n';
    offset += line.size() + 1;
  }

  auto toks = lex(bindings);
  std::size_t i = 0;
  while (toks[i].kind != Tok::End) {
    if (toks[i].kind != Tok::Ident || toks[i].text != "let") throw ParseError("expected 'let'", toks[i].pos);
    ++i;
    if (toks[i].kind != Tok::Ident || !std::isupper(static_cast<unsigned char>(toks[i].text[0]))) {
      throw ParseError("corpus names must start with an uppercase letter", toks[i].pos);
    }
    std::string name = toks[i].text;
    std::size_t name_pos = toks[i].pos;
    ++i;
    if (toks[i].kind != Tok::Equals) throw ParseError("expected '='", toks[i].pos);
    ++i;
    TermParser p(toks, i, corpus);
    Term t = p.opchain();
    i = p.index();
    if (toks[i].kind != Tok::Semi) throw ParseError("expected ';'", toks[i].pos);
    ++i;
    if (corpus.contains(name)) throw ParseError("duplicate corpus name '" + name + "'", name_pos);
    corpus.define(name, t);
  }
  return corpus;
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open corpus file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_corpus(ss.str());
}

const Corpus& builtin_corpus() {
  static const Corpus corpus = parse_corpus(builtin_corpus_text());
  return corpus;
}

std::string print_term(const Term& t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

}  // namespace llv
