#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "efog/grammar.hpp"

namespace efog {

struct ReaderOptions {
  int max_term_depth = 8;
};

struct ReadResult {
  std::optional<Grammar> grammar;  // present iff no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return grammar.has_value(); }
};

namespace detail {

struct Token {
  enum Kind {
    ident, var, terminal,
    lparen, rparen, lbrack, rbrack, comma, dot, hash, colon,
    arrow, lt, ltlt, gt, gtgt, adj,
    end, bad,
  };
  Kind kind = end;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags)
      : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == Token::end) break;
    }
    return out;
  }

 private:
  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;

  bool eof() const { return i_ >= src_.size(); }
  char peek() const { return src_[i_]; }
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) {
    return std::islower(static_cast<unsigned char>(c));
  }
  static bool var_start(char c) {
    return std::isupper(static_cast<unsigned char>(c));
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token make(Token::Kind k, std::string text, int line, int col) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.line = line;
    t.col = col;
    return t;
  }

  void error(int line, int col, std::string msg) {
    diags_.push_back({Severity::error, line, col, std::move(msg)});
  }

  Token next() {
    int line = line_, col = col_;
    if (eof()) return make(Token::end, "", line, col);
    char c = advance();
    switch (c) {
      case '(': return make(Token::lparen, "(", line, col);
      case ')': return make(Token::rparen, ")", line, col);
      case ',': return make(Token::comma, ",", line, col);
      case '.': return make(Token::dot, ".", line, col);
      case '#': return make(Token::hash, "#", line, col);
      case ':': return make(Token::colon, ":", line, col);
      case '[': return bracket_terminal(line, col);
      case ']': return make(Token::rbrack, "]", line, col);
      case '=':
        if (i_ + 1 < src_.size() && src_[i_] == '=' && src_[i_ + 1] == '>') {
          advance();
          advance();
          return make(Token::arrow, "==>", line, col);
        }
        error(line, col, "expected '==>'");
        return make(Token::bad, "=", line, col);
      case '<':
        if (!eof() && peek() == '<') {
          advance();
          return make(Token::ltlt, "<<", line, col);
        }
        if (!eof() && peek() == '>') {
          advance();
          return make(Token::adj, "<>", line, col);
        }
        return make(Token::lt, "<", line, col);
      case '>':
        if (!eof() && peek() == '>') {
          advance();
          return make(Token::gtgt, ">>", line, col);
        }
        return make(Token::gt, ">", line, col);
      default:
        if (ident_start(c) || var_start(c)) {
          std::string text(1, c);
          while (!eof() && ident_char(peek())) text += advance();
          return make(ident_start(c) ? Token::ident : Token::var, std::move(text),
                      line, col);
        }
        error(line, col, std::string("unexpected character '") + c + "'");
        return make(Token::bad, std::string(1, c), line, col);
    }
  }

  // Everything between '[' and ']' is one terminal token; whitespace around
  // it is ignored, whitespace inside it is an error.
  Token bracket_terminal(int line, int col) {
    std::string content;
    int start_line = line_, start_col = col_;
    while (!eof() && peek() != ']' && peek() != '\n') content += advance();
    if (eof() || peek() != ']') {
      error(line, col, "unterminated terminal (expected ']')");
      return make(Token::bad, "[", line, col);
    }
    advance();  // ']'
    std::size_t b = content.find_first_not_of(" \t");
    std::size_t e = content.find_last_not_of(" \t");
    if (b == std::string::npos) {
      error(line, col, "empty terminal");
      return make(Token::bad, "[]", line, col);
    }
    std::string word = content.substr(b, e - b + 1);
    if (word.find(' ') != std::string::npos || word.find('\t') != std::string::npos) {
      error(start_line, start_col, "terminal must be a single token");
      return make(Token::bad, word, line, col);
    }
    return make(Token::terminal, std::move(word), line, col);
  }
};

inline bool formula_keyword(const std::string& s) {
  return s == "and" || s == "or" || s == "if" || s == "iff" || s == "not" ||
         s == "ifthenelse" || s == "first" || s == "last";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, ReaderOptions opts, std::vector<Diagnostic>& diags)
      : ts_(std::move(tokens)), opts_(opts), diags_(diags) {}

  Grammar run(bool& saw_start) {
    while (!at(Token::end)) {
      if (!statement()) sync();
    }
    saw_start = saw_start_;
    return std::move(g_);
  }

 private:
  std::vector<Token> ts_;
  ReaderOptions opts_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
  Grammar g_;
  bool saw_start_ = false;
  int decl_ = 0;

  const Token& peek(std::size_t k = 0) const {
    std::size_t j = i_ + k;
    return j < ts_.size() ? ts_[j] : ts_.back();
  }
  bool at(Token::Kind k) const { return peek().kind == k; }
  const Token& advance() { return ts_[std::min(i_++, ts_.size() - 1)]; }

  void error(const Token& t, std::string msg) {
    diags_.push_back({Severity::error, t.line, t.col, std::move(msg)});
  }

  bool expect(Token::Kind k, const char* what) {
    if (at(k)) {
      advance();
      return true;
    }
    error(peek(), std::string("expected ") + what);
    return false;
  }

  // Skips to just past the next '.' so later statements still get read.
  void sync() {
    while (!at(Token::end)) {
      if (advance().kind == Token::dot) return;
    }
  }

  bool statement() {
    if (at(Token::ident) && peek().text == "lp" && peek(1).kind == Token::colon) {
      advance();
      advance();
      auto f = formula();
      if (!f) return false;
      if (!expect(Token::dot, "'.'")) return false;
      g_.lp_formulas.push_back(std::move(*f));
      return true;
    }
    if (at(Token::ident) && peek().text == "start" && peek(1).kind == Token::colon) {
      const Token& tok = peek();
      advance();
      advance();
      auto c = category();
      if (!c) return false;
      if (!expect(Token::dot, "'.'")) return false;
      if (saw_start_) {
        error(tok, "duplicate start declaration");
        return true;
      }
      saw_start_ = true;
      g_.start = std::move(*c);
      return true;
    }
    return rule();
  }

  bool rule() {
    auto head = category();
    if (!head) return false;
    if (!expect(Token::arrow, "'==>'")) return false;

    if (at(Token::dot)) {
      error(peek(), "rule has no daughters");
      advance();
      return true;
    }
    if (at(Token::terminal)) {
      const Token& word = advance();
      if (!expect(Token::dot, "'.'")) return false;
      if (!head->ground()) {
        error(word, "lexical category must be ground");
        return true;
      }
      LexRule r;
      r.category = std::move(*head);
      r.terminal = word.text;
      r.decl = decl_++;
      g_.lex_rules.push_back(std::move(r));
      return true;
    }

    IDRule r;
    r.mother = std::move(*head);
    for (;;) {
      DaughterSpec d;
      if (at(Token::hash)) {
        advance();
        d.contiguity = Contiguity::non_contiguous;
      }
      if (at(Token::var)) {
        error(peek(), "a variable cannot stand alone as a daughter");
        return false;
      }
      auto c = category();
      if (!c) return false;
      d.category = std::move(*c);
      r.daughters.push_back(std::move(d));
      if (at(Token::comma)) {
        advance();
        continue;
      }
      break;
    }
    if (!expect(Token::dot, "'.'")) return false;
    r.decl = decl_++;
    g_.id_rules.push_back(std::move(r));
    return true;
  }

  std::optional<Term> category() {
    if (!at(Token::ident)) {
      error(peek(), "expected category");
      return std::nullopt;
    }
    const Token& head = peek();
    auto t = term();
    if (t && t->depth() > opts_.max_term_depth) {
      error(head, "term nesting exceeds depth " + std::to_string(opts_.max_term_depth));
      return std::nullopt;
    }
    return t;
  }

  std::optional<Term> term() {
    if (at(Token::var)) return Term::variable(advance().text);
    if (!at(Token::ident)) {
      error(peek(), "expected term");
      return std::nullopt;
    }
    std::string functor = advance().text;
    std::vector<Term> args;
    if (at(Token::lparen)) {
      advance();
      for (;;) {
        auto a = term();
        if (!a) return std::nullopt;
        args.push_back(std::move(*a));
        if (at(Token::comma)) {
          advance();
          continue;
        }
        break;
      }
      if (!expect(Token::rparen, "')'")) return std::nullopt;
    }
    return Term::compound(std::move(functor), std::move(args));
  }

  // Precedence, loosest first: if/iff, or, and, primary. not(...) and
  // ifthenelse(...) are written function-style.
  std::optional<LPFormula> formula() {
    auto left = f_or();
    if (!left) return std::nullopt;
    while (at(Token::ident) && (peek().text == "if" || peek().text == "iff")) {
      bool iff = advance().text == "iff";
      auto right = f_or();
      if (!right) return std::nullopt;
      left = iff ? lp_iff(std::move(*left), std::move(*right))
                 : lp_if(std::move(*left), std::move(*right));
    }
    return left;
  }

  std::optional<LPFormula> f_or() {
    auto left = f_and();
    if (!left) return std::nullopt;
    while (at(Token::ident) && peek().text == "or") {
      advance();
      auto right = f_and();
      if (!right) return std::nullopt;
      left = lp_or(std::move(*left), std::move(*right));
    }
    return left;
  }

  std::optional<LPFormula> f_and() {
    auto left = primary();
    if (!left) return std::nullopt;
    while (at(Token::ident) && peek().text == "and") {
      advance();
      auto right = primary();
      if (!right) return std::nullopt;
      left = lp_and(std::move(*left), std::move(*right));
    }
    return left;
  }

  std::optional<LPFormula> primary() {
    if (at(Token::lparen)) {
      advance();
      auto f = formula();
      if (!f) return std::nullopt;
      if (!expect(Token::rparen, "')'")) return std::nullopt;
      return f;
    }
    if (at(Token::ident) && peek().text == "not" && peek(1).kind == Token::lparen) {
      advance();
      advance();
      auto f = formula();
      if (!f) return std::nullopt;
      if (!expect(Token::rparen, "')'")) return std::nullopt;
      return lp_not(std::move(*f));
    }
    if (at(Token::ident) && peek().text == "ifthenelse" && peek(1).kind == Token::lparen) {
      advance();
      advance();
      auto c = formula();
      if (!c || !expect(Token::comma, "','")) return std::nullopt;
      auto t = formula();
      if (!t || !expect(Token::comma, "','")) return std::nullopt;
      auto e = formula();
      if (!e || !expect(Token::rparen, "')'")) return std::nullopt;
      return lp_ite(std::move(*c), std::move(*t), std::move(*e));
    }
    if (at(Token::ident) && (peek().text == "first" || peek().text == "last") &&
        peek(1).kind == Token::lparen) {
      bool first = advance().text == "first";
      advance();
      auto elem = pattern();
      if (!elem || !expect(Token::comma, "','")) return std::nullopt;
      auto node = pattern();
      if (!node || !expect(Token::rparen, "')'")) return std::nullopt;
      return lp_atom(first ? AtomKind::first : AtomKind::last, std::move(*elem),
                     std::move(*node));
    }
    if (at(Token::ident) && formula_keyword(peek().text)) {
      error(peek(), "unexpected '" + peek().text + "'");
      return std::nullopt;
    }
    return binary_atom();
  }

  std::optional<LPFormula> binary_atom() {
    const Token& start = peek();
    auto a = pattern();
    if (!a) return std::nullopt;
    AtomKind k;
    switch (peek().kind) {
      case Token::lt: k = AtomKind::precede; break;
      case Token::ltlt: k = AtomKind::imm_precede; break;
      case Token::gt: k = AtomKind::follow; break;
      case Token::gtgt: k = AtomKind::imm_follow; break;
      case Token::adj: k = AtomKind::adjacent; break;
      default:
        error(peek(), "expected ordering operator");
        return std::nullopt;
    }
    advance();
    auto b = pattern();
    if (!b) return std::nullopt;
    if (*a == *b) {
      error(start, "identical patterns in ordering atom");
      return std::nullopt;
    }
    return lp_atom(k, std::move(*a), std::move(*b));
  }

  std::optional<Term> pattern() {
    const Token& head = peek();
    auto t = term();
    if (t && t->depth() > opts_.max_term_depth) {
      error(head, "term nesting exceeds depth " + std::to_string(opts_.max_term_depth));
      return std::nullopt;
    }
    return t;
  }
};

}  // namespace detail

// Reads a grammar from text. Diagnostics carry line/column positions; the
// grammar is returned only when no errors were found. The start symbol
// defaults to the mother of the first ID rule (first lexical category when
// the grammar has no ID rules).
inline ReadResult read_grammar(std::string_view text, ReaderOptions opts = {}) {
  ReadResult out;
  detail::Lexer lexer(text, out.diagnostics);
  std::vector<detail::Token> tokens = lexer.run();
  detail::Parser parser(std::move(tokens), opts, out.diagnostics);
  bool saw_start = false;
  Grammar g = parser.run(saw_start);
  if (g.id_rules.empty() && g.lex_rules.empty())
    out.diagnostics.push_back({Severity::error, 0, 0, "grammar contains no rules"});
  if (has_errors(out.diagnostics)) return out;
  if (!saw_start) {
    Term start;
    int best = INT_MAX;
    for (const IDRule& r : g.id_rules)
      if (r.decl < best) {
        best = r.decl;
        start = r.mother;
      }
    if (best == INT_MAX)
      for (const LexRule& r : g.lex_rules)
        if (r.decl < best) {
          best = r.decl;
          start = r.category;
        }
    g.start = std::move(start);
  }
  out.grammar = std::move(g);
  return out;
}

inline ReadResult read_grammar_file(const std::string& path, ReaderOptions opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ReadResult out;
    out.diagnostics.push_back({Severity::error, 0, 0, "cannot open file: " + path});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_grammar(buf.str(), opts);
}

namespace detail {

inline std::string atom_op(AtomKind k) {
  switch (k) {
    case AtomKind::precede: return "<";
    case AtomKind::imm_precede: return "<<";
    case AtomKind::follow: return ">";
    case AtomKind::imm_follow: return ">>";
    case AtomKind::adjacent: return "<>";
    default: return "?";
  }
}

// Precedence levels: 0 if/iff, 1 or, 2 and, 3 primary.
inline int formula_level(const LPFormula& f) {
  switch (f.kind) {
    case FormulaKind::implies:
    case FormulaKind::iff: return 0;
    case FormulaKind::disj: return 1;
    case FormulaKind::conj: return 2;
    default: return 3;
  }
}

inline std::string render_formula(const LPFormula& f, int min_level) {
  int level = formula_level(f);
  std::string out;
  switch (f.kind) {
    case FormulaKind::atom:
      if (f.atom.kind == AtomKind::first || f.atom.kind == AtomKind::last) {
        out = (f.atom.kind == AtomKind::first ? "first(" : "last(") + f.atom.a.str() +
              ", " + f.atom.b.str() + ")";
      } else {
        out = f.atom.a.str() + " " + atom_op(f.atom.kind) + " " + f.atom.b.str();
      }
      break;
    case FormulaKind::neg:
      out = "not(" + render_formula(f.children[0], 0) + ")";
      break;
    case FormulaKind::ifthenelse:
      out = "ifthenelse(" + render_formula(f.children[0], 0) + ", " +
            render_formula(f.children[1], 0) + ", " + render_formula(f.children[2], 0) +
            ")";
      break;
    case FormulaKind::conj:
      out = render_formula(f.children[0], 2) + " and " + render_formula(f.children[1], 3);
      break;
    case FormulaKind::disj:
      out = render_formula(f.children[0], 1) + " or " + render_formula(f.children[1], 2);
      break;
    case FormulaKind::implies:
      out = render_formula(f.children[0], 1) + " if " + render_formula(f.children[1], 1);
      break;
    case FormulaKind::iff:
      out = render_formula(f.children[0], 1) + " iff " + render_formula(f.children[1], 1);
      break;
  }
  if (level < min_level) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string render(const LPFormula& f) { return detail::render_formula(f, 0); }

// Writes the grammar back out in the surface format; reading the result
// yields a structurally identical grammar.
inline std::string serialize(const Grammar& g) {
  std::string out;
  out += "start: " + g.start.str() + ".\n";
  for (auto [is_lex, idx] : g.rule_order()) {
    if (is_lex) {
      const LexRule& r = g.lex_rules[idx];
      out += r.category.str() + " ==> [" + r.terminal + "].\n";
    } else {
      const IDRule& r = g.id_rules[idx];
      out += r.mother.str() + " ==> ";
      for (std::size_t i = 0; i < r.daughters.size(); ++i) {
        if (i) out += ", ";
        if (r.daughters[i].dissolves()) out += "#";
        out += r.daughters[i].category.str();
      }
      out += ".\n";
    }
  }
  for (const LPFormula& f : g.lp_formulas) out += "lp: " + render(f) + ".\n";
  return out;
}

}  // namespace efog
