#include "tyra/types.hpp"

#include <algorithm>
#include <sstream>

namespace tyra {

namespace {
constexpr const char* kFreshAtomName = "$atom";
}

const char* prim_name(PrimClass c) {
  switch (c) {
    case PrimClass::Integer: return "integer";
    case PrimClass::Float: return "float";
    case PrimClass::Number: return "number";
    case PrimClass::String: return "string";
    case PrimClass::Atom: return "atom";
    case PrimClass::Atomic: return "atomic";
  }
  return "?";
}

std::optional<PrimClass> prim_by_name(const std::string& name) {
  if (name == "integer") return PrimClass::Integer;
  if (name == "float") return PrimClass::Float;
  if (name == "number") return PrimClass::Number;
  if (name == "string") return PrimClass::String;
  if (name == "atom") return PrimClass::Atom;
  if (name == "atomic") return PrimClass::Atomic;
  return std::nullopt;
}

Type Type::zero() {
  static const Type t(std::make_shared<Node>(Node{Kind::Zero}));
  return t;
}

Type Type::one() {
  static const Type t(std::make_shared<Node>(Node{Kind::One}));
  return t;
}

Type Type::con(std::string ctor, std::vector<Type> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Con;
  n->ctor = std::move(ctor);
  n->args = std::move(args);
  return Type(std::move(n));
}

Type Type::prim(PrimClass c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prim;
  n->prim = c;
  return Type(std::move(n));
}

Type Type::and_(const Type& a, const Type& b) {
  if (a.kind() == Kind::One) return b;
  if (b.kind() == Kind::One) return a;
  if (a.kind() == Kind::Zero || b.kind() == Kind::Zero) return zero();
  return and_raw(a, b);
}

Type Type::or_(const Type& a, const Type& b) {
  if (a.kind() == Kind::Zero) return b;
  if (b.kind() == Kind::Zero) return a;
  if (a.kind() == Kind::One || b.kind() == Kind::One) return one();
  return or_raw(a, b);
}

Type Type::and_raw(Type a, Type b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->args = {std::move(a), std::move(b)};
  return Type(std::move(n));
}

Type Type::or_raw(Type a, Type b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->args = {std::move(a), std::move(b)};
  return Type(std::move(n));
}

Type Type::not_(Type a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->args = {std::move(a)};
  return Type(std::move(n));
}

bool Type::complement_free() const {
  if (kind() == Kind::Not) return false;
  for (const Type& a : args())
    if (!a.complement_free()) return false;
  return true;
}

int Type::compare(const Type& other) const {
  if (node_ == other.node_) return 0;
  auto ka = static_cast<int>(kind());
  auto kb = static_cast<int>(other.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (kind()) {
    case Kind::Zero:
    case Kind::One:
      return 0;
    case Kind::Prim: {
      auto pa = static_cast<int>(prim_class());
      auto pb = static_cast<int>(other.prim_class());
      return pa < pb ? -1 : pa > pb ? 1 : 0;
    }
    case Kind::Con:
      if (int c = ctor().compare(other.ctor())) return c < 0 ? -1 : 1;
      [[fallthrough]];
    case Kind::And:
    case Kind::Or:
    case Kind::Not: {
      if (args().size() != other.args().size())
        return args().size() < other.args().size() ? -1 : 1;
      for (size_t i = 0; i < args().size(); ++i)
        if (int c = args()[i].compare(other.args()[i])) return c;
      return 0;
    }
  }
  return 0;
}

std::string Type::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Zero: os << '0'; break;
    case Kind::One: os << '1'; break;
    case Kind::Prim: os << prim_name(prim_class()); break;
    case Kind::And:
      os << '(' << args()[0].to_string() << " and " << args()[1].to_string() << ')';
      break;
    case Kind::Or:
      os << '(' << args()[0].to_string() << " or " << args()[1].to_string() << ')';
      break;
    case Kind::Not:
      os << '~' << args()[0].to_string();
      break;
    case Kind::Con:
      os << ctor();
      if (!args().empty()) {
        os << '(';
        for (size_t i = 0; i < args().size(); ++i) {
          if (i) os << ',';
          os << args()[i].to_string();
        }
        os << ')';
      }
      break;
  }
  return os.str();
}

std::string TypeScheme::to_string() const {
  if (is_param) return name;
  std::string s = name;
  if (!params.empty()) {
    s += '(';
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) s += ',';
      s += params[i];
    }
    s += ')';
  }
  return s;
}

std::string TypeRule::to_string() const {
  std::string s = head_ctor;
  if (!head_params.empty()) {
    s += '(';
    for (size_t i = 0; i < head_params.size(); ++i) {
      if (i) s += ',';
      s += head_params[i];
    }
    s += ')';
  }
  s += " -> ";
  if (rhs_sym.name == "[|]" && rhs_sym.arity == 2) {
    s += '[' + rhs_args[0].to_string() + '|' + rhs_args[1].to_string() + ']';
  } else {
    s += rhs_sym.name;
    if (!rhs_args.empty()) {
      s += '(';
      for (size_t i = 0; i < rhs_args.size(); ++i) {
        if (i) s += ',';
        s += rhs_args[i].to_string();
      }
      s += ')';
    }
  }
  return s;
}

void RuleSet::add_rule(TypeRule rule) {
  // Flat schemes only, parameters bound by the head.
  std::set<std::string> head(rule.head_params.begin(), rule.head_params.end());
  if (head.size() != rule.head_params.size())
    throw DomainError("type rule has repeated head parameters: " + rule.to_string());
  for (const TypeScheme& s : rule.rhs_args) {
    if (s.is_param) {
      if (!head.count(s.name))
        throw DomainError("type rule parameter " + s.name + " not bound by head: " +
                          rule.to_string());
    } else {
      for (const std::string& p : s.params)
        if (!head.count(p))
          throw DomainError("type rule parameter " + p + " not bound by head: " +
                            rule.to_string());
    }
  }
  int arity = static_cast<int>(rule.head_params.size());
  auto [it, inserted] = ctor_arity_.emplace(rule.head_ctor, arity);
  if (!inserted && it->second != arity)
    throw DomainError("constructor " + rule.head_ctor + " used with inconsistent arity");
  if (static_cast<int>(rule.rhs_args.size()) != rule.rhs_sym.arity)
    throw DomainError("rule right-hand side arity mismatch: " + rule.to_string());
  signature_.insert(rule.rhs_sym);
  // A 0-ary symbol in a rule is simultaneously a Prolog atom, unless it is
  // the spelling of an integer.
  if (rule.rhs_sym.arity == 0 && !is_numeric_name(rule.rhs_sym.name))
    atom_symbols_.insert(rule.rhs_sym.name);
  int idx = static_cast<int>(rules_.size());
  by_pair_[{rule.head_ctor, rule.rhs_sym}].push_back(idx);
  by_sym_[rule.rhs_sym].push_back(idx);
  by_ctor_[rule.head_ctor].push_back(idx);
  rules_.push_back(std::move(rule));
}

void RuleSet::declare_atom(const std::string& name) {
  atom_symbols_.insert(name);
  signature_.insert(FnSym{name, 0});
}

void RuleSet::note_program_symbol(const FnSym& sym) {
  if (signature_.count(sym)) return;
  if (sym.arity > 0)
    throw DomainError("function symbol " + sym.name + "/" + std::to_string(sym.arity) +
                      " occurs in no type rule");
  declare_atom(sym.name);
}

void RuleSet::validate() const {
  for (const TypeRule& r : rules_) {
    for (const TypeScheme& s : r.rhs_args) {
      if (s.is_param) continue;
      auto it = ctor_arity_.find(s.name);
      if (it == ctor_arity_.end())
        throw DomainError("scheme uses unknown constructor " + s.name + " in rule " +
                          r.to_string());
      if (it->second != static_cast<int>(s.params.size()))
        throw DomainError("scheme arity mismatch for " + s.name + " in rule " + r.to_string());
    }
  }
}

int RuleSet::ctor_arity(const std::string& name) const {
  auto it = ctor_arity_.find(name);
  if (it == ctor_arity_.end()) throw DomainError("unknown type constructor: " + name);
  return it->second;
}

bool RuleSet::is_atom_symbol(const std::string& name) const {
  return atom_symbols_.count(name) > 0 || name == kFreshAtomName;
}

std::vector<const TypeRule*> RuleSet::rules_for(const std::string& ctor,
                                                const FnSym& sym) const {
  std::vector<const TypeRule*> out;
  auto it = by_pair_.find({ctor, sym});
  if (it != by_pair_.end())
    for (int i : it->second) out.push_back(&rules_[i]);
  return out;
}

std::vector<const TypeRule*> RuleSet::rules_for_sym(const FnSym& sym) const {
  std::vector<const TypeRule*> out;
  auto it = by_sym_.find(sym);
  if (it != by_sym_.end())
    for (int i : it->second) out.push_back(&rules_[i]);
  return out;
}

std::vector<const TypeRule*> RuleSet::rules_for_ctor(const std::string& ctor) const {
  std::vector<const TypeRule*> out;
  auto it = by_ctor_.find(ctor);
  if (it != by_ctor_.end())
    for (int i : it->second) out.push_back(&rules_[i]);
  return out;
}

Type scheme_apply(const std::map<std::string, Type>& kappa, const TypeScheme& tau) {
  if (tau.is_param) {
    auto it = kappa.find(tau.name);
    return it == kappa.end() ? Type::zero() : it->second;
  }
  std::vector<Type> args;
  args.reserve(tau.params.size());
  for (const std::string& p : tau.params) {
    auto it = kappa.find(p);
    args.push_back(it == kappa.end() ? Type::zero() : it->second);
  }
  return Type::con(tau.name, std::move(args));
}

namespace {

bool prim_holds_of_literal(PrimClass p, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Int:
      return p == PrimClass::Integer || p == PrimClass::Number || p == PrimClass::Atomic;
    case Term::Kind::Float:
      return p == PrimClass::Float || p == PrimClass::Number || p == PrimClass::Atomic;
    case Term::Kind::Str:
      return p == PrimClass::String;
    default:
      return false;
  }
}

// Shared worker for the two semantics; `extended` enables ~ and drops the
// variable case (terms are ground over Σ ∪ {ρ}).
bool member_impl(const Term& t, const Type& r, const RuleSet& rules, bool extended) {
  switch (r.kind()) {
    case Type::Kind::One:
      return true;
    case Type::Kind::Zero:
      return false;
    case Type::Kind::And:
      return member_impl(t, r.args()[0], rules, extended) &&
             member_impl(t, r.args()[1], rules, extended);
    case Type::Kind::Or:
      return member_impl(t, r.args()[0], rules, extended) ||
             member_impl(t, r.args()[1], rules, extended);
    case Type::Kind::Not:
      if (!extended) throw DomainError("member: complement in type expression");
      return !member_impl(t, r.args()[0], rules, extended);
    case Type::Kind::Prim: {
      if (t.is_var()) {
        if (extended) throw DomainError("ext_member: non-ground term");
        return false;
      }
      if (t.is_literal()) return prim_holds_of_literal(r.prim_class(), t);
      // Compound: only 0-ary atom symbols are atomic.
      bool is_atom = t.arity() == 0 && rules.is_atom_symbol(t.name());
      return is_atom &&
             (r.prim_class() == PrimClass::Atom || r.prim_class() == PrimClass::Atomic);
    }
    case Type::Kind::Con: {
      if (rules.ctor_arity(r.ctor()) != static_cast<int>(r.args().size()))
        throw DomainError("constructor arity mismatch in type: " + r.to_string());
      if (t.is_var()) {
        if (extended) throw DomainError("ext_member: non-ground term");
        return false;
      }
      auto sym = match_symbol(t);
      if (!sym) return false;
      for (const TypeRule* rule : rules.rules_for(r.ctor(), *sym)) {
        std::map<std::string, Type> kappa;
        for (size_t j = 0; j < rule->head_params.size(); ++j)
          kappa.emplace(rule->head_params[j], r.args()[j]);
        bool ok = true;
        for (int i = 0; i < t.arity() && ok; ++i)
          ok = member_impl(t.args()[i], scheme_apply(kappa, rule->rhs_args[i]), rules,
                           extended);
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

bool member(const Term& t, const Type& r, const RuleSet& rules) {
  return member_impl(t, r, rules, false);
}

bool ext_member(const Term& t, const Type& r, const RuleSet& rules) {
  return member_impl(t, r, rules, true);
}

namespace {

void dnf_conjuncts(const Type& r, std::vector<Type>& out);

// Collects the disjuncts of dnf(r) in left-to-right order.
void dnf_disjuncts(const Type& r, std::vector<Type>& out) {
  switch (r.kind()) {
    case Type::Kind::Or:
      dnf_disjuncts(r.args()[0], out);
      dnf_disjuncts(r.args()[1], out);
      return;
    case Type::Kind::And: {
      std::vector<Type> left, right;
      dnf_disjuncts(r.args()[0], left);
      dnf_disjuncts(r.args()[1], right);
      for (const Type& a : left)
        for (const Type& b : right) out.push_back(Type::and_raw(a, b));
      return;
    }
    case Type::Kind::Not:
      throw DomainError("dnf: complement in type expression");
    default:
      out.push_back(r);
  }
}

void dnf_conjuncts(const Type& r, std::vector<Type>& out) {
  if (r.kind() == Type::Kind::And) {
    dnf_conjuncts(r.args()[0], out);
    dnf_conjuncts(r.args()[1], out);
  } else {
    out.push_back(r);
  }
}

Type fold_or(const std::vector<Type>& ds) {
  Type acc = ds.back();
  for (auto it = ds.rbegin() + 1; it != ds.rend(); ++it) acc = Type::or_raw(*it, acc);
  return acc;
}

Type fold_and(const std::vector<Type>& cs) {
  Type acc = cs.back();
  for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) acc = Type::and_raw(*it, acc);
  return acc;
}

}  // namespace

Type dnf(const Type& r) {
  std::vector<Type> ds;
  dnf_disjuncts(r, ds);
  return fold_or(ds);
}

Type canonicalize(const Type& r) {
  switch (r.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
    case Type::Kind::Prim:
      return r;
    case Type::Kind::Not:
      throw DomainError("canonicalize: complement in type expression");
    case Type::Kind::Con: {
      std::vector<Type> args;
      args.reserve(r.args().size());
      for (const Type& a : r.args()) args.push_back(canonicalize(a));
      return Type::con(r.ctor(), std::move(args));
    }
    default:
      break;
  }
  std::vector<Type> disjuncts;
  dnf_disjuncts(r, disjuncts);
  // Compact every conjunct, then the disjunction, ordering by printed form.
  std::vector<std::pair<std::string, Type>> keyed;
  for (const Type& d : disjuncts) {
    std::vector<Type> atoms;
    dnf_conjuncts(d, atoms);
    std::vector<std::pair<std::string, Type>> catoms;
    for (const Type& a : atoms) {
      Type ca = canonicalize(a);
      catoms.emplace_back(ca.to_string(), ca);
    }
    std::sort(catoms.begin(), catoms.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    catoms.erase(std::unique(catoms.begin(), catoms.end(),
                             [](const auto& x, const auto& y) { return x.first == y.first; }),
                 catoms.end());
    std::vector<Type> uniq;
    uniq.reserve(catoms.size());
    for (auto& [k, t] : catoms) uniq.push_back(t);
    Type conj = fold_and(uniq);
    keyed.emplace_back(conj.to_string(), conj);
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first; }),
              keyed.end());
  std::vector<Type> uniq;
  uniq.reserve(keyed.size());
  for (auto& [k, t] : keyed) uniq.push_back(t);
  return fold_or(uniq);
}

namespace {

void depth_walk(const Type& r, int d, int& best) {
  switch (r.kind()) {
    case Type::Kind::And:
    case Type::Kind::Or:
    case Type::Kind::Not:
      for (const Type& a : r.args()) depth_walk(a, d, best);
      return;
    case Type::Kind::Con:
      best = std::max(best, d);
      for (const Type& a : r.args()) depth_walk(a, d + 1, best);
      return;
    default:
      best = std::max(best, d);
  }
}

Type abstract_walk(const Type& r, int d, int k) {
  switch (r.kind()) {
    case Type::Kind::And:
      return Type::and_raw(abstract_walk(r.args()[0], d, k), abstract_walk(r.args()[1], d, k));
    case Type::Kind::Or:
      return Type::or_raw(abstract_walk(r.args()[0], d, k), abstract_walk(r.args()[1], d, k));
    case Type::Kind::Not:
      throw DomainError("depth_abstract: complement in type expression");
    case Type::Kind::Con: {
      std::vector<Type> args;
      args.reserve(r.args().size());
      for (const Type& a : r.args())
        args.push_back(d == k ? Type::one() : abstract_walk(a, d + 1, k));
      return Type::con(r.ctor(), std::move(args));
    }
    default:
      return r;
  }
}

}  // namespace

int atom_depth_max(const Type& r) {
  int best = 0;
  depth_walk(r, 0, best);
  return best;
}

Type depth_abstract(const Type& r, int k) {
  if (k < 1) throw DomainError("depth_abstract: k must be positive");
  return abstract_walk(r, 0, k);
}

}  // namespace tyra
