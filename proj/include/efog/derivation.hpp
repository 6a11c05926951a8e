#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "efog/term.hpp"

namespace efog {

// One node of a derivation tree. Internal nodes carry the ID rule that
// expanded them; leaves carry a lexical rule and its terminal. The
// contiguity flag comes from the daughter slot that introduced the node;
// the root is contiguous.
struct DerivationTree {
  Term category;
  bool contiguous = true;
  int id_rule = -1;
  int lex_rule = -1;
  std::string terminal;
  std::vector<DerivationTree> children;

  bool is_leaf() const { return lex_rule >= 0; }
};

inline int tree_depth(const DerivationTree& t) {
  int d = 0;
  for (const DerivationTree& c : t.children) d = std::max(d, tree_depth(c));
  return d + 1;
}

inline void collect_terminals(const DerivationTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.terminal);
    return;
  }
  for (const DerivationTree& c : t.children) collect_terminals(c, out);
}

// Terminal multiset in child order; linearization permutes it but never
// changes it.
inline std::vector<std::string> terminal_multiset(const DerivationTree& t) {
  std::vector<std::string> out;
  collect_terminals(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline int terminal_count(const DerivationTree& t) {
  if (t.is_leaf()) return 1;
  int n = 0;
  for (const DerivationTree& c : t.children) n += terminal_count(c);
  return n;
}

inline void apply_to_tree(const Subst& s, DerivationTree& t) {
  t.category = substitute(s, t.category);
  for (DerivationTree& c : t.children) apply_to_tree(s, c);
}

// Parent links for a tree whose nodes stay at fixed addresses.
struct TreeIndex {
  std::unordered_map<const DerivationTree*, const DerivationTree*> parent;
  std::vector<const DerivationTree*> nodes;  // pre-order

  explicit TreeIndex(const DerivationTree& root) { add(root, nullptr); }

 private:
  void add(const DerivationTree& t, const DerivationTree* up) {
    parent[&t] = up;
    nodes.push_back(&t);
    for (const DerivationTree& c : t.children) add(c, &t);
  }
};

// The ordering domain owned by one contiguous internal node. Elements are
// the node's contiguous children and, recursively, the lifted elements of
// its dissolved (non-contiguous) children; lexical leaves are atomic.
struct OrderingDomain {
  const DerivationTree* owner = nullptr;
  std::vector<const DerivationTree*> elements;
};

namespace detail {

inline void lift_elements(const DerivationTree& node,
                          std::vector<const DerivationTree*>& out) {
  for (const DerivationTree& c : node.children) {
    if (c.is_leaf() || c.contiguous)
      out.push_back(&c);
    else
      lift_elements(c, out);
  }
}

}  // namespace detail

// One domain per contiguous internal node, in pre-order. Dissolved nodes
// own no domain and are never elements.
inline std::vector<OrderingDomain> collect_domains(const DerivationTree& root) {
  std::vector<OrderingDomain> out;
  std::function<void(const DerivationTree&, bool)> walk =
      [&](const DerivationTree& node, bool is_root) {
        if (!node.is_leaf() && (is_root || node.contiguous)) {
          OrderingDomain d;
          d.owner = &node;
          detail::lift_elements(node, d.elements);
          out.push_back(std::move(d));
        }
        for (const DerivationTree& c : node.children) walk(c, false);
      };
  walk(root, true);
  return out;
}

// A linearization: one permutation of elements per domain, keyed by the
// owning node.
struct Linearization {
  std::map<const DerivationTree*, std::vector<const DerivationTree*>> order;
};

inline Linearization identity_linearization(const std::vector<OrderingDomain>& ds) {
  Linearization lin;
  for (const OrderingDomain& d : ds) lin.order[d.owner] = d.elements;
  return lin;
}

// Inclusive terminal positions. Contiguous nodes cover gap-free intervals;
// a dissolved node's span runs from its leftmost to its rightmost terminal.
struct Span {
  int first = 0, last = -1;
  friend bool operator==(const Span& a, const Span& b) {
    return a.first == b.first && a.last == b.last;
  }
};

struct Layout {
  std::vector<const DerivationTree*> leaves;  // sentence order
  std::unordered_map<const DerivationTree*, Span> span;
};

namespace detail {

inline Span hull_spans(const DerivationTree& t, Layout& lay) {
  auto it = lay.span.find(&t);
  if (t.is_leaf()) return it->second;
  Span s;
  bool any = false;
  for (const DerivationTree& c : t.children) {
    Span cs = hull_spans(c, lay);
    if (!any) {
      s = cs;
      any = true;
    } else {
      s.first = std::min(s.first, cs.first);
      s.last = std::max(s.last, cs.last);
    }
  }
  if (it == lay.span.end()) lay.span.emplace(&t, s);
  return s;
}

}  // namespace detail

// Positions induced by a linearization: within each domain the elements
// tile the owner's interval in permutation order.
inline Layout layout(const DerivationTree& root, const Linearization& lin) {
  Layout lay;
  int pos = 0;
  std::function<void(const DerivationTree&)> emit = [&](const DerivationTree& node) {
    if (node.is_leaf()) {
      lay.span[&node] = Span{pos, pos};
      lay.leaves.push_back(&node);
      ++pos;
      return;
    }
    int start = pos;
    for (const DerivationTree* e : lin.order.at(&node)) emit(*e);
    lay.span[&node] = Span{start, pos - 1};
  };
  emit(root);
  detail::hull_spans(root, lay);  // spans for dissolved nodes
  return lay;
}

inline std::vector<std::string> sentence_of(const Layout& lay) {
  std::vector<std::string> out;
  out.reserve(lay.leaves.size());
  for (const DerivationTree* leaf : lay.leaves) out.push_back(leaf->terminal);
  return out;
}

// Calls fn with every combination of per-domain permutations, in a fixed
// order independent of memory layout. fn returns false to stop early.
inline void enumerate_linearizations(
    const std::vector<OrderingDomain>& domains,
    const std::function<bool(const Linearization&)>& fn) {
  std::vector<std::vector<int>> perms(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) {
    perms[i].resize(domains[i].elements.size());
    for (std::size_t j = 0; j < perms[i].size(); ++j) perms[i][j] = static_cast<int>(j);
  }
  for (;;) {
    Linearization lin;
    for (std::size_t i = 0; i < domains.size(); ++i) {
      std::vector<const DerivationTree*> order;
      order.reserve(perms[i].size());
      for (int j : perms[i]) order.push_back(domains[i].elements[j]);
      lin.order[domains[i].owner] = std::move(order);
    }
    if (!fn(lin)) return;
    std::size_t k = 0;
    while (k < perms.size() && !std::next_permutation(perms[k].begin(), perms[k].end()))
      ++k;  // wrapped back to identity, carry into the next domain
    if (k == perms.size()) return;
  }
}

}  // namespace efog
