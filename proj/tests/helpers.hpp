// Shared test utilities: fixture loading, small-term enumeration,
// alpha-equivalence, and a seeded random-grammar generator.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "efog/oracle.hpp"
#include "efog/reader.hpp"

namespace efog::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(GRAMMARS_DIR) + "/" + name;
}

inline Grammar read_fixture(const std::string& name) {
  ReadResult r = read_grammar_file(fixture_path(name));
  if (!r.ok()) {
    std::string msg = "fixture " + name + " failed to read:";
    for (const Diagnostic& d : r.diagnostics) msg += "\n  " + to_string(d);
    throw std::runtime_error(msg);
  }
  return *r.grammar;
}

inline Grammar must_read(const std::string& src) {
  ReadResult r = read_grammar(src);
  if (!r.ok()) {
    std::string msg = "grammar failed to read:";
    for (const Diagnostic& d : r.diagnostics) msg += "\n  " + to_string(d);
    throw std::runtime_error(msg);
  }
  return *r.grammar;
}

inline std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

inline std::vector<std::string> split(const std::string& sentence) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : sentence) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::set<std::string> language_strings(const Grammar& g, GenerationConfig cfg = {}) {
  LanguageResult r = generate_language(g, cfg);
  std::set<std::string> out;
  for (const auto& s : r.sentences) out.insert(join(s));
  return out;
}

inline std::vector<std::string> lexicon_terminals(const Grammar& g) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const LexRule& l : g.lex_rules)
    if (seen.insert(l.terminal).second) out.push_back(l.terminal);
  return out;
}

// Calls fn with every token string of length 1..max_len over the alphabet.
template <typename Fn>
void for_all_strings(const std::vector<std::string>& alphabet, int max_len, Fn fn) {
  std::vector<int> idx;
  std::vector<std::string> tokens;
  for (int len = 1; len <= max_len; ++len) {
    idx.assign(len, 0);
    for (;;) {
      tokens.clear();
      for (int i : idx) tokens.push_back(alphabet[i]);
      fn(tokens);
      int k = len - 1;
      while (k >= 0 && ++idx[k] == static_cast<int>(alphabet.size())) idx[k--] = 0;
      if (k < 0) break;
    }
  }
}

// Structural equality up to a bijective renaming of variables.
inline bool alpha_equal_rec(const Term& a, const Term& b,
                            std::map<std::string, std::string>& fwd,
                            std::map<std::string, std::string>& bwd) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto f = fwd.find(a.name());
    auto r = bwd.find(b.name());
    if (f == fwd.end() && r == bwd.end()) {
      fwd[a.name()] = b.name();
      bwd[b.name()] = a.name();
      return true;
    }
    return f != fwd.end() && r != bwd.end() && f->second == b.name() &&
           r->second == a.name();
  }
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!alpha_equal_rec(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}

inline bool alpha_equal(const Term& a, const Term& b) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_equal_rec(a, b, fwd, bwd);
}

// All terms of depth <= 2 built from variables {X, Y}, constants {a, b},
// and functors f/1, g/2. Used for brute-force unification properties.
inline std::vector<Term> small_terms() {
  std::vector<Term> base = {Term::variable("X"), Term::variable("Y"),
                            Term::compound("a", {}), Term::compound("b", {})};
  std::vector<Term> out = base;
  for (const Term& t : base) out.push_back(Term::compound("f", {t}));
  for (const Term& s : base)
    for (const Term& t : base) out.push_back(Term::compound("g", {s, t}));
  return out;
}

// A grammar drawn from a fixed pool of atomic categories, sized so that
// brute-force generation stays cheap: the caller rejects oversized draws.
struct RandomGrammarConfig {
  int max_id_rules = 5;
  int max_daughters = 4;
  int max_formulas = 2;
  int max_formula_depth = 2;
};

inline LPFormula random_formula(std::mt19937& rng, const std::vector<Term>& cats,
                                const Term& start, int depth) {
  std::uniform_int_distribution<int> coin(0, 1);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (depth == 0 || coin(rng) == 0) {
    static const AtomKind kinds[] = {AtomKind::precede,    AtomKind::imm_precede,
                                     AtomKind::follow,     AtomKind::imm_follow,
                                     AtomKind::adjacent,   AtomKind::first,
                                     AtomKind::last};
    AtomKind k = kinds[pick(7)];
    int ai = pick(static_cast<int>(cats.size()));
    if (is_position_atom(k)) {
      Term node = pick(3) == 0 ? start : cats[pick(static_cast<int>(cats.size()))];
      return lp_atom(k, cats[ai], node);
    }
    int bi = pick(static_cast<int>(cats.size()) - 1);
    if (bi >= ai) ++bi;  // binary atoms must relate distinct patterns
    return lp_atom(k, cats[ai], cats[bi]);
  }
  switch (pick(6)) {
    case 0: return lp_not(random_formula(rng, cats, start, depth - 1));
    case 1: return lp_and(random_formula(rng, cats, start, depth - 1),
                          random_formula(rng, cats, start, depth - 1));
    case 2: return lp_or(random_formula(rng, cats, start, depth - 1),
                         random_formula(rng, cats, start, depth - 1));
    case 3: return lp_if(random_formula(rng, cats, start, depth - 1),
                         random_formula(rng, cats, start, depth - 1));
    case 4: return lp_iff(random_formula(rng, cats, start, depth - 1),
                          random_formula(rng, cats, start, depth - 1));
    default: return lp_ite(random_formula(rng, cats, start, depth - 1),
                           random_formula(rng, cats, start, depth - 1),
                           random_formula(rng, cats, start, depth - 1));
  }
}

inline Grammar random_grammar(std::mt19937& rng, const RandomGrammarConfig& cfg = {}) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  const std::vector<Term> pool = {Term::compound("c0", {}), Term::compound("c1", {}),
                                  Term::compound("c2", {}), Term::compound("c3", {})};
  const std::vector<std::string> words = {"w0", "w1", "w2", "w3"};
  Grammar g;
  g.start = Term::compound("s", {});
  int decl = 0;
  int n_rules = 1 + pick(cfg.max_id_rules);
  for (int r = 0; r < n_rules; ++r) {
    IDRule rule;
    rule.mother = (r == 0 || pick(3) == 0)
                      ? g.start
                      : pool[pick(static_cast<int>(pool.size()))];
    int n_d = 1 + pick(cfg.max_daughters);
    for (int d = 0; d < n_d; ++d) {
      DaughterSpec spec;
      spec.category = pool[pick(static_cast<int>(pool.size()))];
      spec.contiguity = pick(3) == 0 ? Contiguity::non_contiguous : Contiguity::contiguous;
      rule.daughters.push_back(spec);
    }
    rule.decl = decl++;
    g.id_rules.push_back(std::move(rule));
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    LexRule lex;
    lex.category = pool[i];
    lex.terminal = words[i];
    lex.decl = decl++;
    g.lex_rules.push_back(std::move(lex));
  }
  int n_f = pick(cfg.max_formulas + 1);
  for (int i = 0; i < n_f; ++i)
    g.lp_formulas.push_back(random_formula(rng, pool, g.start, cfg.max_formula_depth));
  return g;
}

// Draws grammars until one generates a small, cap-free language at the given
// depth. Keeps brute-force comparison affordable.
inline Grammar small_random_grammar(std::mt19937& rng, GenerationConfig cfg,
                                    int max_leaves = 6, int max_trees = 40) {
  for (;;) {
    Grammar g = random_grammar(rng);
    TreeEnumeration trees = enumerate_trees(g, cfg);
    if (trees.cap_exceeded || trees.trees.size() > static_cast<std::size_t>(max_trees))
      continue;
    bool ok = true;
    for (const auto& t : trees.trees)
      if (terminal_count(*t) > max_leaves) ok = false;
    if (!ok) continue;
    return g;
  }
}

inline std::vector<std::string> random_tokens(std::mt19937& rng,
                                              const std::vector<std::string>& alphabet,
                                              int max_len) {
  std::uniform_int_distribution<int> len_d(1, max_len);
  std::uniform_int_distribution<int> tok_d(0, static_cast<int>(alphabet.size()) - 1);
  std::vector<std::string> out(len_d(rng));
  for (auto& t : out) t = alphabet[tok_d(rng)];
  return out;
}

}  // namespace efog::test
