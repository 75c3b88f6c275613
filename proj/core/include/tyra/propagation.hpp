#pragma once

#include <map>
#include <string>
#include <vector>

#include "tyra/decision.hpp"
#include "tyra/domain.hpp"
#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

/// A ground type substitution: ⊤, ⊥, or a finite map from parameters to
/// types. Application: ⊤(τ) = 1, ⊥(τ) = 0, and a map substitutes with 0 for
/// parameters outside its domain.
class TypeSub {
 public:
  enum class Kind { Top, Bottom, Map };

  static TypeSub top();
  static TypeSub bottom();
  static TypeSub map(std::map<std::string, Type> bindings);

  Kind kind() const { return kind_; }
  const std::map<std::string, Type>& bindings() const { return bindings_; }
  Type apply(const TypeScheme& tau) const;

  int compare(const TypeSub& o) const;
  friend bool operator==(const TypeSub& a, const TypeSub& b) { return a.compare(b) == 0; }
  friend bool operator<(const TypeSub& a, const TypeSub& b) { return a.compare(b) < 0; }
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Map;
  std::map<std::string, Type> bindings_;
};

/// Sets of type substitutions used as covers in upward propagation.
using CoverSet = std::vector<TypeSub>;

/// κ1 ⋎ κ2: upper bound (pointwise or over the domain union).
TypeSub tsub_join(const TypeSub& k1, const TypeSub& k2);
/// κ1 ⋏ κ2: lower bound (pointwise and over the domain intersection).
TypeSub tsub_meet(const TypeSub& k1, const TypeSub& k2);

/// Set extensions ⋎̄ / ⋏̄ (all pairs).
CoverSet coverset_join(const CoverSet& k1, const CoverSet& k2);
CoverSet coverset_meet(const CoverSet& k1, const CoverSet& k2);

/// cover(R, τ): a cover K with R ⊑ or_{κ∈K} κ(τ).
CoverSet cover(const Type& r, const TypeScheme& tau);

/// or_{κ∈K} κ(τ) — the instantiation a cover stands for.
Type cover_apply(const CoverSet& k, const TypeScheme& tau);

/// Downward propagation of R into the structure of t.
VtSet vts(const Type& r, const Term& t, const RuleSet& rules);

/// down(E, S) for a solved-form equation set.
VtSet down(const EquationSet& eqs, const VtSet& s, const RuleSet& rules);

/// The type of t under μ, computed bottom-up through the type rules.
Type type_of(const Term& t, const VariableTyping& mu, const RuleSet& rules);

/// up(E, S): strengthens μ(x) with type_of(t, μ) for each x = t in E.
VtSet up(const EquationSet& eqs, const VtSet& s, const RuleSet& rules);

/// solve(E, S) = up(E, down(E, S)).
VtSet solve(const EquationSet& eqs, const VtSet& s, const RuleSet& rules);

/// Abstract unification: renames a1/S1 through Ψ, solves the head equations,
/// and restricts the result to V_P. Returns ∅ when the atoms do not unify.
VtSet aunify(const Term& a1, const VtSet& s1, const Term& a2, const VtSet& s2,
             const RuleSet& rules, DecisionEngine& dec);

/// Id♭: the singleton all-One typing.
VtSet id_abstract();

}  // namespace tyra
