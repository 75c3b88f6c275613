#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "tyra/domain.hpp"
#include "tyra/program.hpp"
#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        col(c) {}
};

/// Parses a type-rule file: lines of the form `ctor(B1,...,Bm) -> f(args).`
/// where args are parameters or flat schemes, plus optional
/// `atoms a, b, c.` declarations.
RuleSet parse_rules(const std::string& text);

/// Parses a Prolog-subset program: definite clauses with `\+` negation,
/// the built-in whitelist, and exactly one `:- Goal.` query.
Program parse_program(const std::string& text);

/// Parses a type expression such as `list(atom or float)` against the rule
/// set. Unknown names are errors.
Type parse_type(const std::string& text, const RuleSet& rules);

/// Parses an analysis input `X:type, Y:type` over the program's query
/// variables into a singleton vt-set.
VtSet parse_input_typing(const std::string& text, const RuleSet& rules, const Program& p);

}  // namespace tyra
