#include "tyra/propagation.hpp"

#include <algorithm>
#include <sstream>

namespace tyra {

TypeSub TypeSub::top() {
  TypeSub s;
  s.kind_ = Kind::Top;
  return s;
}

TypeSub TypeSub::bottom() {
  TypeSub s;
  s.kind_ = Kind::Bottom;
  return s;
}

TypeSub TypeSub::map(std::map<std::string, Type> bindings) {
  TypeSub s;
  s.kind_ = Kind::Map;
  s.bindings_ = std::move(bindings);
  return s;
}

Type TypeSub::apply(const TypeScheme& tau) const {
  switch (kind_) {
    case Kind::Top:
      return Type::one();
    case Kind::Bottom:
      return Type::zero();
    case Kind::Map:
      return scheme_apply(bindings_, tau);
  }
  return Type::zero();
}

int TypeSub::compare(const TypeSub& o) const {
  if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_) ? -1 : 1;
  auto a = bindings_.begin();
  auto b = o.bindings_.begin();
  for (; a != bindings_.end() && b != o.bindings_.end(); ++a, ++b) {
    if (int c = a->first.compare(b->first)) return c < 0 ? -1 : 1;
    if (int c = a->second.compare(b->second)) return c;
  }
  if (a != bindings_.end()) return 1;
  if (b != o.bindings_.end()) return -1;
  return 0;
}

std::string TypeSub::to_string() const {
  switch (kind_) {
    case Kind::Top:
      return "top";
    case Kind::Bottom:
      return "bottom";
    case Kind::Map: {
      std::ostringstream os;
      os << '{';
      bool first = true;
      for (const auto& [p, t] : bindings_) {
        if (!first) os << ", ";
        first = false;
        os << p << '/' << t.to_string();
      }
      os << '}';
      return os.str();
    }
  }
  return "?";
}

TypeSub tsub_join(const TypeSub& k1, const TypeSub& k2) {
  if (k1.kind() == TypeSub::Kind::Top || k2.kind() == TypeSub::Kind::Top)
    return TypeSub::top();
  if (k1.kind() == TypeSub::Kind::Bottom) return k2;
  if (k2.kind() == TypeSub::Kind::Bottom) return k1;
  // Pointwise or over the domain union; out-of-domain parameters read as 0,
  // which the or-constructor folds away.
  std::map<std::string, Type> out = k1.bindings();
  for (const auto& [p, t] : k2.bindings()) {
    auto it = out.find(p);
    if (it == out.end()) {
      out.emplace(p, t);
    } else {
      it->second = Type::or_(it->second, t);
    }
  }
  return TypeSub::map(std::move(out));
}

TypeSub tsub_meet(const TypeSub& k1, const TypeSub& k2) {
  if (k1.kind() == TypeSub::Kind::Bottom || k2.kind() == TypeSub::Kind::Bottom)
    return TypeSub::bottom();
  if (k1.kind() == TypeSub::Kind::Top) return k2;
  if (k2.kind() == TypeSub::Kind::Top) return k1;
  std::map<std::string, Type> out;
  for (const auto& [p, t] : k1.bindings()) {
    auto it = k2.bindings().find(p);
    if (it != k2.bindings().end()) out.emplace(p, Type::and_(t, it->second));
  }
  return TypeSub::map(std::move(out));
}

namespace {

CoverSet dedupe(CoverSet k) {
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

}  // namespace

CoverSet coverset_join(const CoverSet& k1, const CoverSet& k2) {
  CoverSet out;
  for (const TypeSub& a : k1)
    for (const TypeSub& b : k2) out.push_back(tsub_join(a, b));
  return dedupe(std::move(out));
}

CoverSet coverset_meet(const CoverSet& k1, const CoverSet& k2) {
  CoverSet out;
  for (const TypeSub& a : k1)
    for (const TypeSub& b : k2) out.push_back(tsub_meet(a, b));
  return dedupe(std::move(out));
}

CoverSet cover(const Type& r, const TypeScheme& tau) {
  switch (r.kind()) {
    case Type::Kind::One:
      return {TypeSub::top()};
    case Type::Kind::Zero:
      return {TypeSub::bottom()};
    case Type::Kind::Or: {
      CoverSet out = cover(r.args()[0], tau);
      for (TypeSub& k : cover(r.args()[1], tau)) out.push_back(std::move(k));
      return dedupe(std::move(out));
    }
    case Type::Kind::And:
      return coverset_meet(cover(r.args()[0], tau), cover(r.args()[1], tau));
    case Type::Kind::Not:
      throw DomainError("cover: complement in type expression");
    default:
      break;
  }
  // R atomic.
  if (tau.is_param) return {TypeSub::map({{tau.name, r}})};
  if (r.kind() == Type::Kind::Con && r.ctor() == tau.name &&
      r.args().size() == tau.params.size()) {
    std::map<std::string, Type> m;
    for (size_t j = 0; j < tau.params.size(); ++j) m.emplace(tau.params[j], r.args()[j]);
    return {TypeSub::map(std::move(m))};
  }
  return {TypeSub::top()};
}

Type cover_apply(const CoverSet& k, const TypeScheme& tau) {
  if (k.empty()) return Type::zero();
  Type acc = k.front().apply(tau);
  for (size_t i = 1; i < k.size(); ++i) acc = Type::or_(acc, k[i].apply(tau));
  return acc;
}

VtSet vts(const Type& r, const Term& t, const RuleSet& rules) {
  // Case order: 1 first, then the variable case.
  if (r.kind() == Type::Kind::One) return id_abstract();
  if (t.is_var()) {
    VariableTyping mu;
    mu.set(t.name(), r);
    return VtSet::singleton(std::move(mu));
  }
  switch (r.kind()) {
    case Type::Kind::And:
      return meet(vts(r.args()[0], t, rules), vts(r.args()[1], t, rules));
    case Type::Kind::Or: {
      VtSet out = vts(r.args()[0], t, rules);
      for (const auto& mu : vts(r.args()[1], t, rules)) out.insert(mu);
      return out;
    }
    case Type::Kind::Not:
      throw DomainError("vts: complement in type expression");
    case Type::Kind::Prim: {
      // Built-in classes against non-variable terms hold or fail outright.
      bool holds = false;
      switch (r.prim_class()) {
        case PrimClass::Integer:
          holds = t.kind() == Term::Kind::Int;
          break;
        case PrimClass::Float:
          holds = t.kind() == Term::Kind::Float;
          break;
        case PrimClass::Number:
          holds = t.kind() == Term::Kind::Int || t.kind() == Term::Kind::Float;
          break;
        case PrimClass::String:
          holds = t.kind() == Term::Kind::Str;
          break;
        case PrimClass::Atom:
          holds = t.is_compound() && t.arity() == 0 && rules.is_atom_symbol(t.name());
          break;
        case PrimClass::Atomic:
          holds = t.is_literal() && t.kind() != Term::Kind::Str;
          holds = holds ||
                  (t.is_compound() && t.arity() == 0 && rules.is_atom_symbol(t.name()));
          break;
      }
      return holds ? id_abstract() : VtSet{};
    }
    case Type::Kind::Con: {
      auto sym = match_symbol(t);
      if (!sym) return VtSet{};
      if (rules.ctor_arity(r.ctor()) != static_cast<int>(r.args().size()))
        throw DomainError("constructor arity mismatch in type: " + r.to_string());
      VtSet out;
      for (const TypeRule* rule : rules.rules_for(r.ctor(), *sym)) {
        std::map<std::string, Type> kappa;
        for (size_t j = 0; j < rule->head_params.size(); ++j)
          kappa.emplace(rule->head_params[j], r.args()[j]);
        VtSet acc = id_abstract();
        for (int i = 0; i < t.arity() && !acc.empty(); ++i)
          acc = meet(acc, vts(scheme_apply(kappa, rule->rhs_args[i]), t.args()[i], rules));
        for (const auto& mu : acc) out.insert(mu);
      }
      return out;
    }
    default:
      // 0 (or any other atomic type) against a non-variable term: no
      // substitution can make t a member.
      return VtSet{};
  }
}

VtSet down(const EquationSet& eqs, const VtSet& s, const RuleSet& rules) {
  VtSet out;
  for (const auto& mu : s) {
    VtSet acc = VtSet::singleton(mu);
    for (const Equation& e : eqs) {
      if (acc.empty()) break;
      if (!e.lhs.is_var())
        throw DomainError("down: equation set not in solved form");
      acc = meet(acc, vts(mu.at(e.lhs.name()), e.rhs, rules));
    }
    for (const auto& nu : acc) out.insert(nu);
  }
  return out;
}

Type type_of(const Term& t, const VariableTyping& mu, const RuleSet& rules) {
  if (t.is_var()) return mu.at(t.name());
  auto sym = match_symbol(t);
  std::vector<const TypeRule*> applicable;
  if (sym) applicable = rules.rules_for_sym(*sym);
  if (applicable.empty()) {
    switch (t.kind()) {
      case Term::Kind::Int:
        return Type::prim(PrimClass::Integer);
      case Term::Kind::Float:
        return Type::prim(PrimClass::Float);
      case Term::Kind::Str:
        return Type::prim(PrimClass::String);
      default:
        break;
    }
    if (t.arity() == 0 && rules.is_atom_symbol(t.name())) return Type::prim(PrimClass::Atom);
    throw DomainError("type_of: no type rule for symbol " + t.name() + "/" +
                      std::to_string(t.arity()));
  }
  std::vector<Type> arg_types;
  arg_types.reserve(t.arity());
  for (const Term& a : t.args()) arg_types.push_back(type_of(a, mu, rules));
  Type result = Type::one();
  for (const TypeRule* rule : applicable) {
    CoverSet k = {TypeSub::map({})};
    for (int i = 0; i < t.arity(); ++i)
      k = coverset_join(k, cover(arg_types[i], rule->rhs_args[i]));
    TypeScheme head = TypeScheme::ctor(rule->head_ctor, rule->head_params);
    result = Type::and_(result, cover_apply(k, head));
  }
  return result;
}

VtSet up(const EquationSet& eqs, const VtSet& s, const RuleSet& rules) {
  VtSet out;
  for (const auto& mu : s) {
    VariableTyping nu = mu;
    for (const Equation& e : eqs) {
      if (!e.lhs.is_var())
        throw DomainError("up: equation set not in solved form");
      const std::string& x = e.lhs.name();
      nu.set(x, Type::and_(nu.at(x), type_of(e.rhs, mu, rules)));
    }
    out.insert(std::move(nu));
  }
  return out;
}

VtSet solve(const EquationSet& eqs, const VtSet& s, const RuleSet& rules) {
  return up(eqs, down(eqs, s, rules), rules);
}

VtSet aunify(const Term& a1, const VtSet& s1, const Term& a2, const VtSet& s2,
             const RuleSet& rules, DecisionEngine& dec) {
  auto unifier = mgu(psi_rename(a1), a2);
  if (!unifier) return VtSet{};
  EquationSet e0 = eq(*unifier);
  VtSet s0 = disjoint_union(psi_rename(s1), s2);
  VtSet solved = solve(e0, s0, rules);
  // Compact every type before the emptiness-heavy steps; the propagation
  // operators stack connectives structurally.
  VtSet compact;
  for (const auto& mu : solved) {
    VariableTyping c;
    for (const auto& [v, t] : mu.entries()) c.set(v, dec.compact(t));
    compact.insert(std::move(c));
  }
  return dec.remove_redundant(restrict_out(compact, dec));
}

VtSet id_abstract() { return VtSet::singleton(VariableTyping{}); }

}  // namespace tyra
