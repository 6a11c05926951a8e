#pragma once

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "efog/term.hpp"

namespace efog {

enum class Contiguity { contiguous, non_contiguous };

// One daughter slot of an immediate-dominance rule. A non-contiguous
// daughter dissolves into the enclosing ordering domain when linearized.
struct DaughterSpec {
  Term category;
  Contiguity contiguity = Contiguity::contiguous;

  bool dissolves() const { return contiguity == Contiguity::non_contiguous; }
  friend bool operator==(const DaughterSpec& a, const DaughterSpec& b) {
    return a.category == b.category && a.contiguity == b.contiguity;
  }
};

// Immediate-dominance rule: mother ==> daughter {, daughter}.
// Daughters are unordered for linearization; their list order is kept for
// derivation-tree child order and deterministic enumeration.
struct IDRule {
  Term mother;
  std::vector<DaughterSpec> daughters;
  int decl = -1;  // declaration position within the grammar file

  friend bool operator==(const IDRule& a, const IDRule& b) {
    return a.mother == b.mother && a.daughters == b.daughters;
  }
};

// Lexical rule: category ==> [terminal]. The category is ground.
struct LexRule {
  Term category;
  std::string terminal;
  int decl = -1;

  friend bool operator==(const LexRule& a, const LexRule& b) {
    return a.category == b.category && a.terminal == b.terminal;
  }
};

enum class AtomKind {
  precede,       // a < b
  imm_precede,   // a << b
  follow,        // a > b
  imm_follow,    // a >> b
  adjacent,      // a <> b
  first,         // first(a, n)
  last,          // last(a, n)
};

inline bool is_position_atom(AtomKind k) {
  return k == AtomKind::first || k == AtomKind::last;
}

// Atomic linear-precedence constraint. For binary atoms both fields are
// element patterns; for first/last, a is the element pattern and b the
// node pattern resolved against ancestors of the domain owner.
struct LPAtom {
  AtomKind kind = AtomKind::precede;
  Term a, b;

  friend bool operator==(const LPAtom& x, const LPAtom& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }
};

enum class FormulaKind { atom, conj, disj, neg, implies, iff, ifthenelse };

// Linear-precedence formula over two-valued logic. For implies the first
// child is the consequent and the second the antecedent ("C if A").
struct LPFormula {
  FormulaKind kind = FormulaKind::atom;
  LPAtom atom;
  std::vector<LPFormula> children;

  friend bool operator==(const LPFormula& a, const LPFormula& b) {
    return a.kind == b.kind && a.atom == b.atom && a.children == b.children;
  }
};

inline LPFormula lp_atom(AtomKind k, Term a, Term b) {
  LPFormula f;
  f.kind = FormulaKind::atom;
  f.atom = LPAtom{k, std::move(a), std::move(b)};
  return f;
}
inline LPFormula lp_unary(FormulaKind k, LPFormula c) {
  LPFormula f;
  f.kind = k;
  f.children.push_back(std::move(c));
  return f;
}
inline LPFormula lp_binary(FormulaKind k, LPFormula l, LPFormula r) {
  LPFormula f;
  f.kind = k;
  f.children.push_back(std::move(l));
  f.children.push_back(std::move(r));
  return f;
}
inline LPFormula lp_not(LPFormula c) { return lp_unary(FormulaKind::neg, std::move(c)); }
inline LPFormula lp_and(LPFormula l, LPFormula r) {
  return lp_binary(FormulaKind::conj, std::move(l), std::move(r));
}
inline LPFormula lp_or(LPFormula l, LPFormula r) {
  return lp_binary(FormulaKind::disj, std::move(l), std::move(r));
}
inline LPFormula lp_if(LPFormula consequent, LPFormula antecedent) {
  return lp_binary(FormulaKind::implies, std::move(consequent), std::move(antecedent));
}
inline LPFormula lp_iff(LPFormula l, LPFormula r) {
  return lp_binary(FormulaKind::iff, std::move(l), std::move(r));
}
inline LPFormula lp_ite(LPFormula c, LPFormula t, LPFormula e) {
  LPFormula f;
  f.kind = FormulaKind::ifthenelse;
  f.children.push_back(std::move(c));
  f.children.push_back(std::move(t));
  f.children.push_back(std::move(e));
  return f;
}

inline bool has_position_atom(const LPFormula& f) {
  if (f.kind == FormulaKind::atom) return is_position_atom(f.atom.kind);
  for (const LPFormula& c : f.children)
    if (has_position_atom(c)) return true;
  return false;
}

// A grammar: ID rules, lexical rules, and global LP formulas that apply to
// every ordering domain of every derivation.
struct Grammar {
  std::vector<IDRule> id_rules;
  std::vector<LexRule> lex_rules;
  std::vector<LPFormula> lp_formulas;
  Term start;

  // Rules in declaration order: (is_lex, index) pairs. Rules without a
  // recorded declaration position sort after recorded ones, ID rules first.
  std::vector<std::pair<bool, int>> rule_order() const {
    std::vector<std::pair<int, std::pair<bool, int>>> keyed;
    keyed.reserve(id_rules.size() + lex_rules.size());
    for (int i = 0; i < static_cast<int>(id_rules.size()); ++i)
      keyed.push_back({id_rules[i].decl < 0 ? INT_MAX : id_rules[i].decl, {false, i}});
    for (int i = 0; i < static_cast<int>(lex_rules.size()); ++i)
      keyed.push_back({lex_rules[i].decl < 0 ? INT_MAX : lex_rules[i].decl, {true, i}});
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<bool, int>> out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) out.push_back(k.second);
    return out;
  }

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.id_rules == b.id_rules && a.lex_rules == b.lex_rules &&
           a.lp_formulas == b.lp_formulas && a.start == b.start;
  }
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  int line = 0, column = 0;  // 0 = no source location
  std::string message;
};

inline std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::error ? "error: " : "warning: ";
  if (d.line > 0) out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
  out += d.message;
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const Diagnostic& d : ds)
    if (d.severity == Severity::error) return true;
  return false;
}

}  // namespace efog
