#pragma once

#include "tyra/decision.hpp"
#include "tyra/domain.hpp"
#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

/// Whether name/arity is in the built-in whitelist.
bool is_builtin(const FnSym& sym);

/// The abstract built-in execution operation: dispatches the call to its
/// transfer function. Throws DomainError for unknown built-ins.
VtSet builtin_transfer(const Term& call, const VtSet& s, const RuleSet& rules,
                       DecisionEngine& dec);

}  // namespace tyra
