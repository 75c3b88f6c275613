#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

/// A body literal: an atom, possibly under negation-as-failure.
struct Literal {
  Term atom;
  bool negated = false;
  int line = 0;
  int col = 0;
};

/// A clause H :- L1, ..., Ln. The query has no head.
struct Clause {
  std::optional<Term> head;
  std::vector<Literal> body;
  int line = 0;
  int col = 0;
};

/// A program: clauses plus exactly one query. Clause variables are
/// standardized apart at parse time (X in clause i becomes "X@i"); V_P is the
/// union of the per-clause variable sets.
struct Program {
  std::vector<Clause> clauses;
  int query_index = -1;
  std::set<std::string> variables;

  const Clause& query() const { return clauses[query_index]; }
  /// The user-visible name of a standardized variable.
  static std::string display_var(const std::string& name);
  /// The standardized name of a query variable, if the query mentions it.
  std::optional<std::string> query_var(const std::string& display_name) const;
  /// Clauses defining each user predicate.
  std::map<FnSym, std::vector<int>> predicates() const;
};

/// Registers the program's term symbols with the rule set (constants become
/// atom symbols) and checks that every called predicate is defined or a
/// built-in. Throws DomainError otherwise.
void bind_program(const Program& p, RuleSet& rules);

}  // namespace tyra
