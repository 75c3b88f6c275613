#pragma once

#include <map>
#include <string>
#include <vector>

#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

class DecisionEngine;

/// A total map from program variables to types, stored sparsely: a variable
/// with no entry is typed 1. The entries never hold 1.
class VariableTyping {
 public:
  VariableTyping() = default;

  /// Binds var to t; a binding to 1 erases instead.
  void set(const std::string& var, const Type& t);
  /// The type of var, defaulting to 1.
  Type at(const std::string& var) const;
  bool has(const std::string& var) const { return entries_.count(var) > 0; }
  const std::map<std::string, Type>& entries() const { return entries_; }

  /// μ↑V: keeps vars satisfying `keep`, the rest become 1.
  template <typename Pred>
  VariableTyping restrict_to(Pred keep) const {
    VariableTyping out;
    for (const auto& [v, t] : entries_)
      if (keep(v)) out.entries_.emplace(v, t);
    return out;
  }

  int compare(const VariableTyping& o) const;
  friend bool operator==(const VariableTyping& a, const VariableTyping& b) {
    return a.compare(b) == 0;
  }
  friend bool operator<(const VariableTyping& a, const VariableTyping& b) {
    return a.compare(b) < 0;
  }

  /// {X/t, Y/t} rendering, entries ordered by variable name.
  std::string to_string() const;

 private:
  std::map<std::string, Type> entries_;
};

/// A finite set of variable typings, representing an abstract substitution.
/// Kept ordered and duplicate-free so analyses are deterministic.
class VtSet {
 public:
  VtSet() = default;
  explicit VtSet(std::vector<VariableTyping> ts);
  static VtSet singleton(VariableTyping t);

  void insert(VariableTyping t);
  bool empty() const { return typings_.empty(); }
  size_t size() const { return typings_.size(); }
  const std::vector<VariableTyping>& typings() const { return typings_; }
  auto begin() const { return typings_.begin(); }
  auto end() const { return typings_.end(); }

  friend bool operator==(const VtSet& a, const VtSet& b) {
    return a.typings_ == b.typings_;
  }

  /// The variables mentioned by any typing.
  std::vector<std::string> mentioned_vars() const;
  std::string to_string() const;

 private:
  std::vector<VariableTyping> typings_;  // sorted, unique
};

/// S1 ⊗ S2: pairwise pointwise conjunction.
VtSet meet(const VtSet& s1, const VtSet& s2);

/// [S1 ∪ S2] followed by redundancy removal.
VtSet join(const VtSet& s1, const VtSet& s2, DecisionEngine& dec);

/// S1 ⊎ S2 for typings over disjoint variable sets (Ψ(V_P) vs V_P).
VtSet disjoint_union(const VtSet& s1, const VtSet& s2);

/// rest: drops typings with an entry ≡ 0, then projects onto V_P
/// (the non-Ψ variables).
VtSet restrict_out(const VtSet& s, DecisionEngine& dec);

/// θ ∈ γ_v(μ): every binding lands in the variable's type.
bool satisfies(const Substitution& theta, const VariableTyping& mu, const RuleSet& rules);
bool satisfies(const Substitution& theta, const VtSet& s, const RuleSet& rules);

VariableTyping psi_rename(const VariableTyping& mu);
VtSet psi_rename(const VtSet& s);

}  // namespace tyra
