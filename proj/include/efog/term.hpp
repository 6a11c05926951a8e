#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace efog {

// A first-order term: a variable (uppercase-initial name) or a compound
// (lowercase-initial functor with zero or more argument terms). Categories
// such as np(nom) are compounds; np(Case) carries a variable argument.
class Term {
 public:
  Term() = default;

  static Term variable(std::string name) {
    Term t;
    t.var_ = true;
    t.name_ = std::move(name);
    return t;
  }

  static Term compound(std::string functor, std::vector<Term> args = {}) {
    Term t;
    t.var_ = false;
    t.name_ = std::move(functor);
    t.args_ = std::move(args);
    return t;
  }

  bool is_variable() const { return var_; }
  bool is_compound() const { return !var_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool ground() const {
    if (var_) return false;
    for (const Term& a : args_)
      if (!a.ground()) return false;
    return true;
  }

  // Nesting depth: variables and zero-ary compounds have depth 1.
  int depth() const {
    int d = 0;
    for (const Term& a : args_) d = std::max(d, a.depth());
    return d + 1;
  }

  std::string str() const {
    std::string out = name_;
    if (!args_.empty()) {
      out += '(';
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) out += ", ";
        out += args_[i].str();
      }
      out += ')';
    }
    return out;
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.var_ == b.var_ && a.name_ == b.name_ && a.args_ == b.args_;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.var_ != b.var_) return a.var_ > b.var_;
    if (a.name_ != b.name_) return a.name_ < b.name_;
    return a.args_ < b.args_;
  }

 private:
  bool var_ = false;
  std::string name_;
  std::vector<Term> args_;
};

// Substitution from variable names to terms. Kept idempotent: no bound
// variable occurs in any binding's value.
using Subst = std::map<std::string, Term>;

inline Term substitute(const Subst& s, const Term& t) {
  if (t.is_variable()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(s, a));
  return Term::compound(t.name(), std::move(args));
}

inline bool occurs(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.name() == var;
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

namespace detail {

// Binds var to the already-substituted term t, keeping s idempotent.
inline std::optional<Subst> bind(Subst s, const std::string& var, const Term& t) {
  if (occurs(var, t)) return std::nullopt;
  Subst one;
  one.emplace(var, t);
  for (auto& [k, v] : s) v = substitute(one, v);
  s.insert_or_assign(var, t);
  return s;
}

}  // namespace detail

// Most general unifier extending s, or nullopt if the terms do not unify.
// Uses the occurs check; the result is idempotent whenever s is.
inline std::optional<Subst> unify(const Term& a, const Term& b, Subst s = {}) {
  Term x = substitute(s, a);
  Term y = substitute(s, b);
  if (x == y) return s;
  if (x.is_variable()) return detail::bind(std::move(s), x.name(), y);
  if (y.is_variable()) return detail::bind(std::move(s), y.name(), x);
  if (x.name() != y.name() || x.args().size() != y.args().size()) return std::nullopt;
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    auto r = unify(x.args()[i], y.args()[i], std::move(s));
    if (!r) return std::nullopt;
    s = std::move(*r);
  }
  return s;
}

// Renames every variable in t to a fresh "_G<n>" name, sharing names for
// repeated variables via seen. Fresh names never collide with source names
// because source variables may not start with an underscore.
inline Term rename_apart(const Term& t, int& counter,
                         std::map<std::string, std::string>& seen) {
  if (t.is_variable()) {
    auto it = seen.find(t.name());
    if (it == seen.end())
      it = seen.emplace(t.name(), "_G" + std::to_string(counter++)).first;
    return Term::variable(it->second);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_apart(a, counter, seen));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace efog
