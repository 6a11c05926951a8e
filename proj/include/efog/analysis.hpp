#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "efog/constraints.hpp"
#include "efog/oracle.hpp"

namespace efog {

// The orderings one ID rule permits locally: every permutation of its
// daughters that satisfies the grammar's LP formulas on a depth-1 tree.
// Permutations are index sequences into the daughter list.
struct OrderingSet {
  int rule = -1;
  std::vector<Term> daughters;
  std::set<std::vector<int>> permitted;
};

struct OrderingSetResult {
  std::optional<OrderingSet> set;
  std::string error;
};

// Local orderings for rule_index. Node patterns resolve only against the
// mother, so formulas mentioning higher nodes are inapplicable here.
// Defined only for rules whose daughters are all contiguous.
inline OrderingSetResult permitted_orders(const Grammar& g, int rule_index) {
  OrderingSetResult out;
  if (rule_index < 0 || rule_index >= static_cast<int>(g.id_rules.size())) {
    out.error = "no such rule";
    return out;
  }
  const IDRule& rule = g.id_rules[rule_index];
  for (const DaughterSpec& d : rule.daughters)
    if (d.dissolves()) {
      out.error = "rule has non-contiguous daughters";
      return out;
    }

  // Depth-1 local tree: the mother with one node per daughter.
  DerivationTree mother;
  mother.category = rule.mother;
  mother.children.resize(rule.daughters.size());
  for (std::size_t i = 0; i < rule.daughters.size(); ++i)
    mother.children[i].category = rule.daughters[i].category;

  OrderingDomain d;
  d.owner = &mother;
  for (const DerivationTree& c : mother.children) d.elements.push_back(&c);
  TreeIndex index(mother);

  std::vector<GroundInstance> instances;
  for (const LPFormula& f : g.lp_formulas)
    for (GroundInstance& gi : ground_formula(f, d, index))
      instances.push_back(std::move(gi));

  OrderingSet set;
  set.rule = rule_index;
  for (const DaughterSpec& ds : rule.daughters) set.daughters.push_back(ds.category);

  const int k = static_cast<int>(rule.daughters.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  do {
    SpanTable spans;
    for (int pos = 0; pos < k; ++pos)
      spans[&mother.children[perm[pos]]] = Span{pos, pos};
    spans[&mother] = Span{0, k - 1};
    bool ok = true;
    for (const GroundInstance& gi : instances)
      if (!eval_ground(gi, spans)) {
        ok = false;
        break;
      }
    if (ok) set.permitted.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.set = std::move(set);
  return out;
}

// Verdict of the constant-ordering check. In the positive case pairs is an
// acyclic precedence relation whose consistent orderings reproduce every
// rule's permitted set; otherwise the witness names the first mismatching
// rule, or a cycle forced by the rules jointly.
struct EcpoVerdict {
  bool ecpo = false;
  std::set<std::pair<Term, Term>> pairs;
  int witness_rule = -1;
  std::set<std::vector<int>> witness_permitted;
  std::set<std::vector<int>> witness_consistent;
  std::vector<Term> cycle;
};

namespace detail {

// True when every occurrence of a precedes every occurrence of b.
inline bool all_precede(const std::vector<Term>& daughters, const std::vector<int>& perm,
                        const Term& a, const Term& b) {
  int last_a = -1, first_b = static_cast<int>(perm.size());
  for (int pos = 0; pos < static_cast<int>(perm.size()); ++pos) {
    if (daughters[perm[pos]] == a) last_a = std::max(last_a, pos);
    if (daughters[perm[pos]] == b) first_b = std::min(first_b, pos);
  }
  return last_a < first_b;
}

inline std::set<std::vector<int>> consistent_orders(
    const OrderingSet& set, const std::set<std::pair<Term, Term>>& pairs) {
  std::set<std::vector<int>> out;
  const int k = static_cast<int>(set.daughters.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (const auto& [a, b] : pairs)
      if (!all_precede(set.daughters, perm, a, b)) {
        ok = false;
        break;
      }
    if (ok) out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline bool find_cycle(const std::set<std::pair<Term, Term>>& pairs,
                       std::vector<Term>& cycle) {
  std::set<Term> nodes;
  for (const auto& [a, b] : pairs) {
    nodes.insert(a);
    nodes.insert(b);
  }
  std::map<Term, int> state;  // 0 new, 1 active, 2 done
  std::vector<Term> path;
  std::function<bool(const Term&)> dfs = [&](const Term& n) {
    state[n] = 1;
    path.push_back(n);
    for (const auto& [a, b] : pairs) {
      if (!(a == n)) continue;
      if (state[b] == 1) {
        auto it = std::find(path.begin(), path.end(), b);
        cycle.assign(it, path.end());
        return true;
      }
      if (state[b] == 0 && dfs(b)) return true;
    }
    path.pop_back();
    state[n] = 2;
    return false;
  };
  for (const Term& n : nodes)
    if (state[n] == 0 && dfs(n)) return true;
  return false;
}

}  // namespace detail

// Checks whether one constant precedence relation over categories
// reproduces every rule's permitted orderings. The candidate relation
// holds (a, b) iff a always precedes b in every permitted permutation of
// every rule containing both; if any relation works, this maximal one does.
inline EcpoVerdict ecpo_check(const std::vector<OrderingSet>& sets) {
  EcpoVerdict v;

  std::set<Term> categories;
  for (const OrderingSet& s : sets)
    for (const Term& d : s.daughters) categories.insert(d);

  for (const Term& a : categories) {
    for (const Term& b : categories) {
      if (a == b) continue;
      bool cooccur = false, always = true;
      for (const OrderingSet& s : sets) {
        bool has_a = false, has_b = false;
        for (const Term& d : s.daughters) {
          if (d == a) has_a = true;
          if (d == b) has_b = true;
        }
        if (!has_a || !has_b) continue;
        cooccur = true;
        for (const std::vector<int>& perm : s.permitted)
          if (!detail::all_precede(s.daughters, perm, a, b)) {
            always = false;
            break;
          }
        if (!always) break;
      }
      if (cooccur && always) v.pairs.insert({a, b});
    }
  }

  for (const OrderingSet& s : sets) {
    std::set<std::vector<int>> consistent = detail::consistent_orders(s, v.pairs);
    if (consistent != s.permitted) {
      v.ecpo = false;
      v.witness_rule = s.rule;
      v.witness_permitted = s.permitted;
      v.witness_consistent = std::move(consistent);
      return v;
    }
  }

  if (detail::find_cycle(v.pairs, v.cycle)) {
    // Every cycle edge is forced by some rule, so no acyclic relation works.
    v.ecpo = false;
    return v;
  }
  v.ecpo = true;
  return v;
}

// Sentences in exactly one of the two languages, under shared bounds.
struct DiffResult {
  std::set<std::vector<std::string>> only_in_first;
  std::set<std::vector<std::string>> only_in_second;
  bool cap_exceeded = false;
};

inline DiffResult language_diff(const Grammar& g1, const Grammar& g2,
                                GenerationConfig cfg = {}) {
  DiffResult out;
  LanguageResult l1 = generate_language(g1, cfg);
  LanguageResult l2 = generate_language(g2, cfg);
  out.cap_exceeded = l1.cap_exceeded || l2.cap_exceeded;
  std::set_difference(l1.sentences.begin(), l1.sentences.end(), l2.sentences.begin(),
                      l2.sentences.end(),
                      std::inserter(out.only_in_first, out.only_in_first.end()));
  std::set_difference(l2.sentences.begin(), l2.sentences.end(), l1.sentences.begin(),
                      l1.sentences.end(),
                      std::inserter(out.only_in_second, out.only_in_second.end()));
  return out;
}

}  // namespace efog
