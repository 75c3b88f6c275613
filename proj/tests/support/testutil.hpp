#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tyra/cfg.hpp"
#include "tyra/decision.hpp"
#include "tyra/domain.hpp"
#include "tyra/parser.hpp"
#include "tyra/program.hpp"
#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra::test {

/// The running-example rule set: nat/even/odd over 0 and s, lists, trees.
RuleSet peano_rules();

/// The rule set of the motivation example: lists over nil and cons, trees
/// over nil and node (nil overloaded).
RuleSet overloaded_nil_rules();

Term parse_term_text(const std::string& text);
Type ty(const std::string& text, const RuleSet& rules);
VariableTyping typing(const std::vector<std::pair<std::string, std::string>>& bindings,
                      const RuleSet& rules);
VtSet vtset(const std::vector<std::vector<std::pair<std::string, std::string>>>& typings,
            const RuleSet& rules);

/// Random generators over a rule set (deterministic given the engine seed).
struct Gen {
  std::mt19937 rng;
  const RuleSet& rules;

  explicit Gen(const RuleSet& r, unsigned seed) : rng(seed), rules(r) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; }

  /// A random complement-free type of bounded size.
  Type type(int size_budget, bool allow_prims = true);
  /// A random type possibly containing complements.
  Type ext_type(int size_budget);
  /// A random term over the signature and the given variable names.
  Term term(int depth, const std::vector<std::string>& vars);
  /// A ground member of ⟦r⟧ sampled from an enumeration, if one exists.
  std::optional<Term> sample_member(const Type& r, int depth = 3);
};

/// Syntactic matching of a pattern against a ground term.
std::optional<Substitution> match(const Term& pattern, const Term& ground);

/// uf(a1,θ1,a2,θ2): renames θ1(a1) apart and unifies with θ2(a2).
std::optional<Substitution> uf(const Term& a1, const Substitution& th1, const Term& a2,
                               const Substitution& th2);

/// Bounded SLD interpreter used by the concrete-soundness harness. Collects
/// the substitution over the source clause's variables at every textual
/// program point reached.
struct SldTrace {
  // point id -> observed substitutions (bindings for that clause's variables)
  std::map<int, std::vector<Substitution>> at_point;
  bool depth_capped = false;
};

SldTrace run_sld(const Program& p, const Cfg& cfg, const Substitution& initial,
                 int max_depth);

}  // namespace tyra::test
