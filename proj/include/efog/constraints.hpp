#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "efog/derivation.hpp"
#include "efog/grammar.hpp"

namespace efog {

// One ground instance of an LP formula on one ordering domain: an injective
// assignment of the formula's distinct element patterns to domain elements
// plus the deterministic resolution of its node patterns, under one shared
// variable binding.
struct GroundInstance {
  const LPFormula* formula = nullptr;
  const OrderingDomain* domain = nullptr;
  std::map<Term, const DerivationTree*> elems;  // element pattern -> element
  std::map<Term, const DerivationTree*> nodes;  // node pattern -> resolved node
  Subst bindings;
};

namespace detail {

inline void collect_patterns(const LPFormula& f, std::vector<Term>& elems,
                             std::vector<Term>& nodes) {
  if (f.kind == FormulaKind::atom) {
    auto push_unique = [](std::vector<Term>& v, const Term& t) {
      for (const Term& u : v)
        if (u == t) return;
      v.push_back(t);
    };
    push_unique(elems, f.atom.a);
    if (is_position_atom(f.atom.kind))
      push_unique(nodes, f.atom.b);
    else
      push_unique(elems, f.atom.b);
    return;
  }
  for (const LPFormula& c : f.children) collect_patterns(c, elems, nodes);
}

}  // namespace detail

// All ground instances of f on domain d. Distinct patterns map to distinct
// elements; node patterns resolve to the nearest ancestor of the owner
// (owner included) whose category unifies. An unassignable pattern simply
// yields no instance on that path, so the formula imposes nothing there.
inline std::vector<GroundInstance> ground_formula(const LPFormula& f,
                                                  const OrderingDomain& d,
                                                  const TreeIndex& index) {
  std::vector<Term> elem_patterns, node_patterns;
  detail::collect_patterns(f, elem_patterns, node_patterns);

  std::vector<GroundInstance> out;
  std::vector<const DerivationTree*> chosen(elem_patterns.size(), nullptr);
  std::vector<bool> used(d.elements.size(), false);

  std::function<void(std::size_t, Subst)> assign = [&](std::size_t k, Subst s) {
    if (k == elem_patterns.size()) {
      GroundInstance gi;
      gi.formula = &f;
      gi.domain = &d;
      for (std::size_t i = 0; i < elem_patterns.size(); ++i)
        gi.elems.emplace(elem_patterns[i], chosen[i]);
      for (const Term& np : node_patterns) {
        const DerivationTree* node = d.owner;
        const DerivationTree* hit = nullptr;
        while (node) {
          if (auto r = unify(np, node->category, s)) {
            s = std::move(*r);
            hit = node;
            break;
          }
          auto it = index.parent.find(node);
          node = it == index.parent.end() ? nullptr : it->second;
        }
        if (!hit) return;  // unresolvable node pattern: no instance here
        gi.nodes.emplace(np, hit);
      }
      gi.bindings = std::move(s);
      out.push_back(std::move(gi));
      return;
    }
    for (std::size_t e = 0; e < d.elements.size(); ++e) {
      if (used[e]) continue;
      auto r = unify(elem_patterns[k], d.elements[e]->category, s);
      if (!r) continue;
      used[e] = true;
      chosen[k] = d.elements[e];
      assign(k + 1, std::move(*r));
      used[e] = false;
    }
  };
  assign(0, Subst{});
  return out;
}

inline std::vector<GroundInstance> ground_formula(const LPFormula& f,
                                                  const OrderingDomain& d,
                                                  const DerivationTree& root) {
  TreeIndex index(root);
  return ground_formula(f, d, index);
}

using SpanTable = std::unordered_map<const DerivationTree*, Span>;

namespace detail {

inline bool eval_atom(const LPAtom& atom, const GroundInstance& gi,
                      const SpanTable& spans) {
  const Span a = spans.at(gi.elems.at(atom.a));
  if (is_position_atom(atom.kind)) {
    const Span n = spans.at(gi.nodes.at(atom.b));
    return atom.kind == AtomKind::first ? a.first == n.first : a.last == n.last;
  }
  const Span b = spans.at(gi.elems.at(atom.b));
  switch (atom.kind) {
    case AtomKind::precede: return a.last < b.first;
    case AtomKind::imm_precede: return a.last + 1 == b.first;
    case AtomKind::follow: return b.last < a.first;
    case AtomKind::imm_follow: return b.last + 1 == a.first;
    case AtomKind::adjacent: return a.last + 1 == b.first || b.last + 1 == a.first;
    default: return false;
  }
}

inline bool eval_formula(const LPFormula& f, const GroundInstance& gi,
                         const SpanTable& spans) {
  switch (f.kind) {
    case FormulaKind::atom: return eval_atom(f.atom, gi, spans);
    case FormulaKind::neg: return !eval_formula(f.children[0], gi, spans);
    case FormulaKind::conj:
      return eval_formula(f.children[0], gi, spans) &&
             eval_formula(f.children[1], gi, spans);
    case FormulaKind::disj:
      return eval_formula(f.children[0], gi, spans) ||
             eval_formula(f.children[1], gi, spans);
    case FormulaKind::implies:  // consequent first: "C if A" is A -> C
      return !eval_formula(f.children[1], gi, spans) ||
             eval_formula(f.children[0], gi, spans);
    case FormulaKind::iff:
      return eval_formula(f.children[0], gi, spans) ==
             eval_formula(f.children[1], gi, spans);
    case FormulaKind::ifthenelse:
      return eval_formula(f.children[0], gi, spans)
                 ? eval_formula(f.children[1], gi, spans)
                 : eval_formula(f.children[2], gi, spans);
  }
  return false;
}

}  // namespace detail

inline bool eval_ground(const GroundInstance& gi, const SpanTable& spans) {
  return detail::eval_formula(*gi.formula, gi, spans);
}

inline bool eval_ground(const GroundInstance& gi, const Layout& lay) {
  return eval_ground(gi, lay.span);
}

// Per-tree constraint state, grounded once and reused across linearizations
// of the same tree: grounding depends only on the tree, not on positions.
struct TreeConstraints {
  std::vector<OrderingDomain> domains;
  std::vector<GroundInstance> instances;
};

inline TreeConstraints prepare_constraints(const DerivationTree& root,
                                           const Grammar& g) {
  TreeConstraints tc;
  tc.domains = collect_domains(root);
  TreeIndex index(root);
  for (const OrderingDomain& d : tc.domains)
    for (const LPFormula& f : g.lp_formulas)
      for (GroundInstance& gi : ground_formula(f, d, index))
        tc.instances.push_back(std::move(gi));
  return tc;
}

inline bool admissible(const TreeConstraints& tc, const Layout& lay) {
  for (const GroundInstance& gi : tc.instances)
    if (!eval_ground(gi, lay)) return false;
  return true;
}

// A linearization is admissible iff every ground instance of every LP
// formula on every domain of the tree evaluates to true.
inline bool admissible(const DerivationTree& root, const Linearization& lin,
                       const Grammar& g) {
  TreeConstraints tc = prepare_constraints(root, g);
  return admissible(tc, layout(root, lin));
}

}  // namespace efog
