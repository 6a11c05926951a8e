#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "efog/constraints.hpp"
#include "efog/derivation.hpp"
#include "efog/grammar.hpp"
#include "efog/reader.hpp"

namespace efog {

struct GenerationConfig {
  int depth_bound = 8;          // max levels on any root-to-leaf path
  int max_sentences = 100000;   // cap on distinct emitted strings
};

// A derivation tree paired with one admissible linearization. The
// linearization points into the tree, so the tree lives behind a stable
// address.
struct Witness {
  std::unique_ptr<DerivationTree> tree;
  Linearization lin;
};

namespace detail {

struct Expansion {
  DerivationTree tree;
  Subst subst;
};

// All expansions of cat at the given level, in rule-declaration order with
// leftmost daughters expanded first.
inline void expand_category(const Grammar& g,
                            const std::vector<std::pair<bool, int>>& order,
                            const Term& cat, int level, const Subst& s, int bound,
                            int& counter, std::vector<Expansion>& out) {
  for (auto [is_lex, idx] : order) {
    if (is_lex) {
      const LexRule& r = g.lex_rules[idx];
      auto s2 = unify(cat, r.category, s);
      if (!s2) continue;
      DerivationTree leaf;
      leaf.category = r.category;
      leaf.lex_rule = idx;
      leaf.terminal = r.terminal;
      out.push_back({std::move(leaf), std::move(*s2)});
      continue;
    }
    if (level + 1 > bound) continue;  // children would exceed the depth bound
    const IDRule& r = g.id_rules[idx];
    std::map<std::string, std::string> seen;
    Term mother = rename_apart(r.mother, counter, seen);
    auto s2 = unify(cat, mother, s);
    if (!s2) continue;
    std::vector<DaughterSpec> daughters;
    daughters.reserve(r.daughters.size());
    for (const DaughterSpec& d : r.daughters)
      daughters.push_back({rename_apart(d.category, counter, seen), d.contiguity});

    std::vector<std::pair<std::vector<DerivationTree>, Subst>> states;
    states.push_back({{}, std::move(*s2)});
    for (const DaughterSpec& d : daughters) {
      std::vector<std::pair<std::vector<DerivationTree>, Subst>> next;
      for (auto& [children, st] : states) {
        std::vector<Expansion> subs;
        expand_category(g, order, d.category, level + 1, st, bound, counter, subs);
        for (Expansion& e : subs) {
          auto kids = children;
          e.tree.contiguous = !d.dissolves();
          kids.push_back(std::move(e.tree));
          next.push_back({std::move(kids), std::move(e.subst)});
        }
      }
      states = std::move(next);
      if (states.empty()) break;
    }
    for (auto& [children, st] : states) {
      DerivationTree node;
      node.category = mother;
      node.id_rule = idx;
      node.children = std::move(children);
      out.push_back({std::move(node), std::move(st)});
    }
  }
}

}  // namespace detail

struct TreeEnumeration {
  std::vector<std::unique_ptr<DerivationTree>> trees;
  bool cap_exceeded = false;
};

// Every derivation tree rooted in the start symbol whose depth stays within
// cfg.depth_bound, in a deterministic order. Categories carry the final
// unifier; leftover variables stay as variables.
inline TreeEnumeration enumerate_trees(const Grammar& g, GenerationConfig cfg = {}) {
  TreeEnumeration out;
  int counter = 0;
  std::vector<detail::Expansion> roots;
  detail::expand_category(g, g.rule_order(), g.start, 1, Subst{}, cfg.depth_bound,
                          counter, roots);
  if (static_cast<int>(roots.size()) > cfg.max_sentences) {
    out.cap_exceeded = true;
    return out;
  }
  for (detail::Expansion& e : roots) {
    auto tree = std::make_unique<DerivationTree>(std::move(e.tree));
    apply_to_tree(e.subst, *tree);
    out.trees.push_back(std::move(tree));
  }
  return out;
}

struct LanguageResult {
  std::set<std::vector<std::string>> sentences;
  bool cap_exceeded = false;
};

// Reference semantics: every admissible linearization of every derivation
// tree within the bounds, merged into a deduplicated sentence set.
inline LanguageResult generate_language(const Grammar& g, GenerationConfig cfg = {}) {
  LanguageResult out;
  TreeEnumeration trees = enumerate_trees(g, cfg);
  if (trees.cap_exceeded) {
    out.cap_exceeded = true;
    return out;
  }
  for (const auto& tree : trees.trees) {
    TreeConstraints tc = prepare_constraints(*tree, g);
    enumerate_linearizations(tc.domains, [&](const Linearization& lin) {
      Layout lay = layout(*tree, lin);
      if (admissible(tc, lay)) {
        out.sentences.insert(sentence_of(lay));
        if (static_cast<int>(out.sentences.size()) > cfg.max_sentences) {
          out.cap_exceeded = true;
          return false;
        }
      }
      return true;
    });
    if (out.cap_exceeded) break;
  }
  return out;
}

struct OracleParse {
  bool recognized = false;
  std::vector<Witness> witnesses;
  bool cap_exceeded = false;
};

// Brute-force recognition: equal to membership in generate_language under
// the same bounds. Trees whose terminal multiset cannot match are skipped.
inline OracleParse oracle_recognize(const Grammar& g,
                                    const std::vector<std::string>& tokens,
                                    GenerationConfig cfg = {}) {
  OracleParse out;
  std::vector<std::string> want = tokens;
  std::sort(want.begin(), want.end());

  bool all_known = true;
  for (const std::string& t : tokens) {
    bool known = false;
    for (const LexRule& r : g.lex_rules)
      if (r.terminal == t) {
        known = true;
        break;
      }
    if (!known) {
      all_known = false;
      break;
    }
  }
  if (!all_known) return out;

  TreeEnumeration trees = enumerate_trees(g, cfg);
  if (trees.cap_exceeded) {
    out.cap_exceeded = true;
    return out;
  }
  for (auto& tree : trees.trees) {
    if (terminal_multiset(*tree) != want) continue;
    TreeConstraints tc = prepare_constraints(*tree, g);
    enumerate_linearizations(tc.domains, [&](const Linearization& lin) {
      Layout lay = layout(*tree, lin);
      if (sentence_of(lay) == tokens && admissible(tc, lay)) {
        Witness w;
        w.tree = std::make_unique<DerivationTree>(*tree);
        // Re-key the linearization onto the copied tree.
        TreeIndex orig(*tree), copy(*w.tree);
        std::unordered_map<const DerivationTree*, const DerivationTree*> remap;
        for (std::size_t i = 0; i < orig.nodes.size(); ++i)
          remap[orig.nodes[i]] = copy.nodes[i];
        for (const auto& [owner, elems] : lin.order) {
          std::vector<const DerivationTree*> mapped;
          mapped.reserve(elems.size());
          for (const DerivationTree* e : elems) mapped.push_back(remap.at(e));
          w.lin.order[remap.at(owner)] = std::move(mapped);
        }
        out.witnesses.push_back(std::move(w));
      }
      return true;
    });
  }
  out.recognized = !out.witnesses.empty();
  return out;
}

}  // namespace efog
