#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "efog/derivation.hpp"

namespace efog {

namespace detail {

inline std::string render_node(const DerivationTree& t, const Layout& lay) {
  if (t.is_leaf()) return t.category.name() + "(" + t.terminal + ")";
  std::vector<const DerivationTree*> kids;
  kids.reserve(t.children.size());
  for (const DerivationTree& c : t.children) kids.push_back(&c);
  std::sort(kids.begin(), kids.end(),
            [&](const DerivationTree* a, const DerivationTree* b) {
              return lay.span.at(a).first < lay.span.at(b).first;
            });
  std::string out = t.category.name() + "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ", ";
    out += render_node(*kids[i], lay);
  }
  out += ")";
  return out;
}

}  // namespace detail

// Bracketed derivation with children in sentence order, terminals at the
// leaves: s(np(ivan), vp(part(se), v(brasna))).
inline std::string render_tree(const DerivationTree& root, const Linearization& lin) {
  Layout lay = layout(root, lin);
  return detail::render_node(root, lay);
}

// Per-domain order annotations: one line per ordering domain with its
// elements in linear order, the owner tagged with its span.
inline std::string render_orders(const DerivationTree& root, const Linearization& lin) {
  Layout lay = layout(root, lin);
  std::string out;
  std::function<void(const DerivationTree&)> walk = [&](const DerivationTree& node) {
    auto it = lin.order.find(&node);
    if (it != lin.order.end()) {
      Span s = lay.span.at(&node);
      out += "  order " + node.category.str() + "@" + std::to_string(s.first) + "-" +
             std::to_string(s.last) + ":";
      for (const DerivationTree* e : it->second) out += " " + e->category.str();
      out += "\n";
    }
    for (const DerivationTree& c : node.children) walk(c);
  };
  walk(root);
  return out;
}

inline std::string render_parse(const DerivationTree& root, const Linearization& lin,
                                bool with_orders) {
  std::string out = render_tree(root, lin);
  if (with_orders) out += "\n" + render_orders(root, lin);
  return out;
}

}  // namespace efog
