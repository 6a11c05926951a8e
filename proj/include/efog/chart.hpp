#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "efog/constraints.hpp"
#include "efog/derivation.hpp"
#include "efog/grammar.hpp"
#include "efog/oracle.hpp"

namespace efog {

struct ParseOptions {
  int max_depth = 8;          // same tree-depth bound as the oracle
  bool prune = true;          // combination-time pruning of local binary atoms
  std::size_t max_items = 1u << 20;
};

struct ParseForest {
  std::vector<Witness> parses;
};

struct ParseResult {
  ParseForest forest;
  std::vector<Diagnostic> diagnostics;
  bool ok = true;

  bool recognized() const { return !forest.parses.empty(); }
};

namespace detail {

inline bool coverage_is_interval(std::uint64_t cov) {
  if (cov == 0) return false;
  std::uint64_t down = cov >> std::countr_zero(cov);
  return (down & (down + 1)) == 0;
}

inline Span coverage_span(std::uint64_t cov) {
  return Span{std::countr_zero(cov), 63 - std::countl_zero(cov)};
}

struct ChartItem {
  Term category;
  int id_rule = -1;
  int lex_rule = -1;
  int position = -1;            // leaf token index
  std::vector<int> children;    // passive item ids, in rule daughter order
  std::uint64_t coverage = 0;
  int depth = 1;
  // Elements of the item's own ordering domain (internal items only):
  // contiguous children and leaves as themselves, dissolved children lifted.
  std::vector<std::pair<Term, Span>> elements;

  bool is_leaf() const { return lex_rule >= 0; }
};

struct ActiveItem {
  int id_rule = -1;
  std::vector<int> children;
  Subst binds;
  std::uint64_t coverage = 0;
  int max_child_depth = 0;
};

inline std::string passive_key(const ChartItem& it) {
  if (it.is_leaf()) return "L" + std::to_string(it.lex_rule) + "@" + std::to_string(it.position);
  std::string k = "R" + std::to_string(it.id_rule);
  for (int c : it.children) k += "," + std::to_string(c);
  return k;
}

inline std::string active_key(const ActiveItem& it) {
  std::string k = "A" + std::to_string(it.id_rule);
  for (int c : it.children) k += "," + std::to_string(c);
  return k;
}

// True when every instance of every pruning-eligible formula over the
// item's own elements holds. Only formulas without position atoms are
// eligible: their instances survive unchanged into the enclosing domain
// whether the item stays contiguous or dissolves, so a false instance here
// is a false instance in any complete candidate. Skipped unless the item
// is fully ground, since later bindings could invalidate a local match.
inline bool local_atoms_ok(const ChartItem& item, const Grammar& g) {
  if (item.elements.empty()) return true;
  for (const auto& [cat, span] : item.elements)
    if (!cat.ground()) return true;

  std::vector<DerivationTree> nodes(item.elements.size());
  DerivationTree owner;
  owner.category = item.category;
  OrderingDomain d;
  d.owner = &owner;
  SpanTable spans;
  for (std::size_t i = 0; i < item.elements.size(); ++i) {
    nodes[i].category = item.elements[i].first;
    d.elements.push_back(&nodes[i]);
    spans[&nodes[i]] = item.elements[i].second;
  }
  TreeIndex index(owner);
  for (const LPFormula& f : g.lp_formulas) {
    if (has_position_atom(f)) continue;
    for (const GroundInstance& gi : ground_formula(f, d, index))
      if (!eval_ground(gi, spans)) return false;
  }
  return true;
}

struct ChartState {
  const Grammar& g;
  const std::vector<std::string>& tokens;
  ParseOptions opt;
  std::vector<ChartItem> passive;
  std::vector<ActiveItem> active;
  std::unordered_map<std::string, int> passive_ids;
  std::unordered_map<std::string, int> active_ids;
  // Work queue entries remember how many items of the other kind existed
  // when they were enqueued, so each (active, passive) pair combines once.
  struct Event {
    bool is_passive;
    int index;
    std::size_t other_count;
  };
  std::vector<Event> queue;
  std::vector<IDRule> renamed;  // rules with variables renamed apart
  bool overflow = false;

  ChartState(const Grammar& gr, const std::vector<std::string>& toks, ParseOptions o)
      : g(gr), tokens(toks), opt(o) {
    int counter = 0;
    renamed.reserve(g.id_rules.size());
    for (const IDRule& r : g.id_rules) {
      std::map<std::string, std::string> seen;
      IDRule rr;
      rr.mother = rename_apart(r.mother, counter, seen);
      for (const DaughterSpec& d : r.daughters)
        rr.daughters.push_back({rename_apart(d.category, counter, seen), d.contiguity});
      renamed.push_back(std::move(rr));
    }
  }

  void add_passive(ChartItem item) {
    if (passive.size() + active.size() >= opt.max_items) {
      overflow = true;
      return;
    }
    std::string key = passive_key(item);
    if (passive_ids.count(key)) return;
    if (opt.prune && !item.is_leaf() && !local_atoms_ok(item, g)) return;
    int id = static_cast<int>(passive.size());
    passive_ids.emplace(std::move(key), id);
    passive.push_back(std::move(item));
    queue.push_back({true, id, active.size()});
  }

  void add_active(ActiveItem item) {
    if (passive.size() + active.size() >= opt.max_items) {
      overflow = true;
      return;
    }
    std::string key = active_key(item);
    if (active_ids.count(key)) return;
    int id = static_cast<int>(active.size());
    active_ids.emplace(std::move(key), id);
    active.push_back(std::move(item));
    queue.push_back({false, id, passive.size()});
  }

  void combine(int active_id, int passive_id) {
    // Copies, not references: the vectors may grow during this call.
    ActiveItem a = active[active_id];
    const IDRule& rule = renamed[a.id_rule];
    std::size_t slot = a.children.size();
    const DaughterSpec& d = rule.daughters[slot];
    ChartItem p = passive[passive_id];

    if ((a.coverage & p.coverage) != 0) return;
    if (!d.dissolves() && !coverage_is_interval(p.coverage)) return;
    if (std::max(a.max_child_depth, p.depth) + 1 > opt.max_depth) return;
    auto s = unify(d.category, p.category, a.binds);
    if (!s) return;

    ActiveItem next;
    next.id_rule = a.id_rule;
    next.children = a.children;
    next.children.push_back(passive_id);
    next.binds = std::move(*s);
    next.coverage = a.coverage | p.coverage;
    next.max_child_depth = std::max(a.max_child_depth, p.depth);

    if (next.children.size() == rule.daughters.size()) {
      ChartItem item;
      item.category = substitute(next.binds, rule.mother);
      item.id_rule = a.id_rule;
      item.children = std::move(next.children);
      item.coverage = next.coverage;
      item.depth = next.max_child_depth + 1;
      for (std::size_t i = 0; i < item.children.size(); ++i) {
        const ChartItem& c = passive[item.children[i]];
        if (c.is_leaf() || !rule.daughters[i].dissolves()) {
          item.elements.push_back(
              {substitute(next.binds, c.category), coverage_span(c.coverage)});
        } else {
          for (const auto& [cat, span] : c.elements)
            item.elements.push_back({substitute(next.binds, cat), span});
        }
      }
      add_passive(std::move(item));
    } else {
      add_active(std::move(next));
    }
  }

  void run() {
    for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
      for (int li = 0; li < static_cast<int>(g.lex_rules.size()); ++li) {
        if (g.lex_rules[li].terminal != tokens[pos]) continue;
        ChartItem leaf;
        leaf.category = g.lex_rules[li].category;
        leaf.lex_rule = li;
        leaf.position = static_cast<int>(pos);
        leaf.coverage = std::uint64_t{1} << pos;
        add_passive(std::move(leaf));
      }
    }
    for (int ri = 0; ri < static_cast<int>(renamed.size()); ++ri) {
      ActiveItem a;
      a.id_rule = ri;
      add_active(std::move(a));
    }
    std::size_t head = 0;
    while (head < queue.size() && !overflow) {
      Event ev = queue[head++];
      if (ev.is_passive) {
        for (std::size_t ai = 0; ai < ev.other_count; ++ai) combine(static_cast<int>(ai), ev.index);
      } else {
        for (std::size_t pi = 0; pi < ev.other_count; ++pi) combine(ev.index, static_cast<int>(pi));
      }
    }
  }
};

// Rebuilds the derivation tree for a root item and re-derives its category
// bindings with one unification pass, mirroring the oracle's construction.
struct Extractor {
  const Grammar& g;
  const std::vector<ChartItem>& passive;
  int counter = 0;
  Subst subst;
  std::vector<std::pair<DerivationTree*, std::uint64_t>> coverages;

  bool build(int item_id, const Term& expected, DerivationTree& out) {
    const ChartItem& it = passive[item_id];
    if (it.is_leaf()) {
      const LexRule& r = g.lex_rules[it.lex_rule];
      auto s = unify(expected, r.category, subst);
      if (!s) return false;
      subst = std::move(*s);
      out.category = r.category;
      out.lex_rule = it.lex_rule;
      out.terminal = r.terminal;
      coverages.push_back({&out, it.coverage});
      return true;
    }
    const IDRule& r = g.id_rules[it.id_rule];
    std::map<std::string, std::string> seen;
    Term mother = rename_apart(r.mother, counter, seen);
    auto s = unify(expected, mother, subst);
    if (!s) return false;
    subst = std::move(*s);
    out.category = mother;
    out.id_rule = it.id_rule;
    out.children.resize(it.children.size());
    for (std::size_t i = 0; i < it.children.size(); ++i) {
      Term dcat = rename_apart(r.daughters[i].category, counter, seen);
      out.children[i].contiguous = !r.daughters[i].dissolves();
      if (!build(it.children[i], dcat, out.children[i])) return false;
    }
    coverages.push_back({&out, it.coverage});
    return true;
  }
};

}  // namespace detail

// Parses tokens against the grammar. The forest holds exactly the
// (tree, linearization) pairs the oracle admits within the same depth
// bound: the chart proposes candidates, and a final admissibility pass
// re-checks every LP formula on every domain.
inline ParseResult parse(const Grammar& g, const std::vector<std::string>& tokens,
                         ParseOptions opt = {}) {
  ParseResult out;
  if (tokens.empty()) {
    out.ok = false;
    out.diagnostics.push_back({Severity::error, 0, 0, "empty input"});
    return out;
  }
  if (tokens.size() > 64) {
    out.ok = false;
    out.diagnostics.push_back(
        {Severity::error, 0, 0, "input longer than 64 tokens is not supported"});
    return out;
  }
  for (const std::string& t : tokens) {
    bool known = false;
    for (const LexRule& r : g.lex_rules)
      if (r.terminal == t) {
        known = true;
        break;
      }
    if (!known) {
      out.ok = false;
      out.diagnostics.push_back({Severity::error, 0, 0, "unknown token: " + t});
      return out;
    }
  }

  detail::ChartState chart(g, tokens, opt);
  chart.run();
  if (chart.overflow) {
    out.ok = false;
    out.diagnostics.push_back({Severity::error, 0, 0, "chart size limit exceeded"});
    return out;
  }

  const std::uint64_t full =
      tokens.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tokens.size()) - 1;
  for (int id = 0; id < static_cast<int>(chart.passive.size()); ++id) {
    const detail::ChartItem& item = chart.passive[id];
    if (item.coverage != full) continue;
    if (!unify(item.category, g.start)) continue;

    detail::Extractor ex{g, chart.passive};
    std::map<std::string, std::string> seen;
    Term start = rename_apart(g.start, ex.counter, seen);
    auto tree = std::make_unique<DerivationTree>();
    if (!ex.build(id, start, *tree)) continue;
    apply_to_tree(ex.subst, *tree);

    std::unordered_map<const DerivationTree*, std::uint64_t> cov;
    for (const auto& [node, c] : ex.coverages) cov[node] = c;
    Linearization lin;
    for (const OrderingDomain& d : collect_domains(*tree)) {
      std::vector<const DerivationTree*> order = d.elements;
      std::sort(order.begin(), order.end(),
                [&](const DerivationTree* a, const DerivationTree* b) {
                  return std::countr_zero(cov.at(a)) < std::countr_zero(cov.at(b));
                });
      lin.order[d.owner] = std::move(order);
    }

    TreeConstraints tc = prepare_constraints(*tree, g);
    Layout lay = layout(*tree, lin);
    if (!admissible(tc, lay)) continue;
    Witness w;
    w.tree = std::move(tree);
    w.lin = std::move(lin);
    out.forest.parses.push_back(std::move(w));
  }
  return out;
}

inline bool recognize(const Grammar& g, const std::vector<std::string>& tokens,
                      ParseOptions opt = {}) {
  return parse(g, tokens, opt).recognized();
}

}  // namespace efog
