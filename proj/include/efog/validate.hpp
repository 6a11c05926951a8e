#pragma once

#include <set>
#include <string>
#include <vector>

#include "efog/grammar.hpp"

namespace efog {

namespace detail {

inline void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

inline void formula_patterns(const LPFormula& f, std::vector<Term>& out) {
  if (f.kind == FormulaKind::atom) {
    out.push_back(f.atom.a);
    out.push_back(f.atom.b);
    return;
  }
  for (const LPFormula& c : f.children) formula_patterns(c, out);
}

}  // namespace detail

// Static checks beyond the reader: an unusable start symbol is an error;
// unmatched LP patterns, unbound mother variables, and unreachable rules
// are warnings.
inline std::vector<Diagnostic> validate_grammar(const Grammar& g) {
  std::vector<Diagnostic> out;

  bool start_has_rule = false;
  for (const IDRule& r : g.id_rules)
    if (r.mother.name() == g.start.name()) start_has_rule = true;
  for (const LexRule& r : g.lex_rules)
    if (r.category.name() == g.start.name()) start_has_rule = true;
  if (!start_has_rule)
    out.push_back({Severity::error, 0, 0,
                   "start symbol '" + g.start.str() + "' has no rule"});

  // Every category mentioned by any rule, for LP pattern matching.
  std::vector<Term> mentioned;
  for (const IDRule& r : g.id_rules) {
    mentioned.push_back(r.mother);
    for (const DaughterSpec& d : r.daughters) mentioned.push_back(d.category);
  }
  for (const LexRule& r : g.lex_rules) mentioned.push_back(r.category);

  for (const LPFormula& f : g.lp_formulas) {
    std::vector<Term> patterns;
    detail::formula_patterns(f, patterns);
    for (const Term& p : patterns) {
      bool matches = false;
      for (const Term& m : mentioned)
        if (unify(p, m)) {
          matches = true;
          break;
        }
      if (!matches)
        out.push_back({Severity::warning, 0, 0,
                       "lp pattern '" + p.str() + "' matches nothing in the grammar"});
    }
  }

  for (std::size_t i = 0; i < g.id_rules.size(); ++i) {
    const IDRule& r = g.id_rules[i];
    std::set<std::string> mother_vars, daughter_vars;
    detail::collect_variables(r.mother, mother_vars);
    for (const DaughterSpec& d : r.daughters)
      detail::collect_variables(d.category, daughter_vars);
    for (const std::string& v : mother_vars)
      if (!daughter_vars.count(v))
        out.push_back({Severity::warning, 0, 0,
                       "rule " + std::to_string(i) + " (" + r.mother.str() +
                           "): mother variable " + v + " occurs in no daughter"});
  }

  // Reachability over unification: a rule is reachable when its head
  // unifies with the start symbol or with a daughter of a reachable rule.
  std::vector<Term> frontier{g.start};
  std::vector<bool> id_seen(g.id_rules.size(), false);
  std::vector<bool> lex_seen(g.lex_rules.size(), false);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < g.id_rules.size(); ++i) {
      if (id_seen[i]) continue;
      for (const Term& f : frontier)
        if (unify(f, g.id_rules[i].mother)) {
          id_seen[i] = true;
          grew = true;
          for (const DaughterSpec& d : g.id_rules[i].daughters)
            frontier.push_back(d.category);
          break;
        }
    }
    for (std::size_t i = 0; i < g.lex_rules.size(); ++i) {
      if (lex_seen[i]) continue;
      for (const Term& f : frontier)
        if (unify(f, g.lex_rules[i].category)) {
          lex_seen[i] = true;
          grew = true;
          break;
        }
    }
  }
  for (std::size_t i = 0; i < g.id_rules.size(); ++i)
    if (!id_seen[i])
      out.push_back({Severity::warning, 0, 0,
                     "rule for '" + g.id_rules[i].mother.str() +
                         "' is unreachable from the start symbol"});
  for (std::size_t i = 0; i < g.lex_rules.size(); ++i)
    if (!lex_seen[i])
      out.push_back({Severity::warning, 0, 0,
                     "lexical entry for '" + g.lex_rules[i].category.str() +
                         "' is unreachable from the start symbol"});
  return out;
}

}  // namespace efog
