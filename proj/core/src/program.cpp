#include "tyra/program.hpp"

#include "tyra/builtins.hpp"

namespace tyra {

std::string Program::display_var(const std::string& name) {
  auto pos = name.find('@');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

std::optional<std::string> Program::query_var(const std::string& display_name) const {
  if (query_index < 0) return std::nullopt;
  std::string candidate = display_name + "@" + std::to_string(query_index);
  std::set<std::string> vars;
  if (clauses[query_index].head) clauses[query_index].head->collect_vars(vars);
  for (const Literal& l : clauses[query_index].body) l.atom.collect_vars(vars);
  if (vars.count(candidate)) return candidate;
  return std::nullopt;
}

std::map<FnSym, std::vector<int>> Program::predicates() const {
  std::map<FnSym, std::vector<int>> out;
  for (size_t i = 0; i < clauses.size(); ++i) {
    if (!clauses[i].head) continue;
    out[clauses[i].head->symbol()].push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

void note_term_symbols(const Term& t, RuleSet& rules) {
  if (!t.is_compound()) return;
  rules.note_program_symbol(t.symbol());
  for (const Term& a : t.args()) note_term_symbols(a, rules);
}

}  // namespace

void bind_program(const Program& p, RuleSet& rules) {
  auto preds = p.predicates();
  for (const Clause& c : p.clauses) {
    if (c.head) {
      for (const Term& a : c.head->args()) note_term_symbols(a, rules);
    }
    for (const Literal& l : c.body) {
      FnSym pred = l.atom.symbol();
      if (!preds.count(pred) && !is_builtin(pred))
        throw DomainError("call to undefined predicate " + pred.name + "/" +
                          std::to_string(pred.arity));
      for (const Term& a : l.atom.args()) note_term_symbols(a, rules);
    }
  }
  rules.validate();
}

}  // namespace tyra
