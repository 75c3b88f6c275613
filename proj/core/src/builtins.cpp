#include "tyra/builtins.hpp"

#include <map>

#include "tyra/propagation.hpp"

namespace tyra {

namespace {

enum class Op {
  Empty,       // abort, fail, false
  Identity,    // @< family, write family, ...
  Compound,    // keep typings where the argument is not atomic
  Var,         // keep typings where the argument has type 1
  CheckAtom,   // meet with vts of the row's type at the argument(s)
  CheckAtomic,
  CheckFloat,
  CheckInteger,
  CheckNumber,
  CheckPut,
  CheckString,
  Unify,       // =, ==
  Format,      // f4
  Arith,       // f3
  Length,      // f1
  Compare,
  Name,        // f2
};

const std::map<FnSym, Op>& table() {
  static const std::map<FnSym, Op> t = {
      {{"abort", 0}, Op::Empty},
      {{"fail", 0}, Op::Empty},
      {{"false", 0}, Op::Empty},
      {{"!", 0}, Op::Identity},
      {{"@<", 2}, Op::Identity},
      {{"@>", 2}, Op::Identity},
      {{"@=<", 2}, Op::Identity},
      {{"@>=", 2}, Op::Identity},
      {{"\\==", 2}, Op::Identity},
      {{"\\=", 2}, Op::Identity},
      {{"display", 1}, Op::Identity},
      {{"ground", 1}, Op::Identity},
      {{"listing", 0}, Op::Identity},
      {{"listing", 1}, Op::Identity},
      {{"nl", 0}, Op::Identity},
      {{"nonvar", 1}, Op::Identity},
      {{"portray_clause", 1}, Op::Identity},
      {{"print", 1}, Op::Identity},
      {{"read", 1}, Op::Identity},
      {{"repeat", 0}, Op::Identity},
      {{"true", 0}, Op::Identity},
      {{"write", 1}, Op::Identity},
      {{"writeq", 1}, Op::Identity},
      {{"compound", 1}, Op::Compound},
      {{"var", 1}, Op::Var},
      {{"atom", 1}, Op::CheckAtom},
      {{"atomic", 1}, Op::CheckAtomic},
      {{"float", 1}, Op::CheckFloat},
      {{"erase", 1}, Op::CheckInteger},
      {{"integer", 1}, Op::CheckInteger},
      {{"tab", 1}, Op::CheckInteger},
      {{"number", 1}, Op::CheckNumber},
      {{"put", 1}, Op::CheckPut},
      {{"string", 1}, Op::CheckString},
      {{"=", 2}, Op::Unify},
      {{"==", 2}, Op::Unify},
      {{"format", 1}, Op::Format},
      {{"format", 2}, Op::Format},
      {{"format", 3}, Op::Format},
      {{"<", 2}, Op::Arith},
      {{">", 2}, Op::Arith},
      {{"=<", 2}, Op::Arith},
      {{">=", 2}, Op::Arith},
      {{"=:=", 2}, Op::Arith},
      {{"=\\=", 2}, Op::Arith},
      {{"is", 2}, Op::Arith},
      {{"length", 2}, Op::Length},
      {{"compare", 3}, Op::Compare},
      {{"name", 2}, Op::Name},
  };
  return t;
}

Type list_of_one(const RuleSet& rules) {
  if (!rules.has_ctor("list") || rules.ctor_arity("list") != 1)
    throw DomainError("built-in requires a unary 'list' type constructor in the rule set");
  return Type::con("list", {Type::one()});
}

VtSet meet_vts(const VtSet& s, const Type& r, const Term& t, const RuleSet& rules) {
  return meet(s, vts(r, t, rules));
}

}  // namespace

bool is_builtin(const FnSym& sym) { return table().count(sym) > 0; }

VtSet builtin_transfer(const Term& call, const VtSet& s, const RuleSet& rules,
                       DecisionEngine& dec) {
  auto it = table().find(call.symbol());
  if (it == table().end())
    throw DomainError("unknown built-in " + call.name() + "/" + std::to_string(call.arity()));
  const auto& args = call.args();
  switch (it->second) {
    case Op::Empty:
      return VtSet{};
    case Op::Identity:
      return s;
    case Op::Compound: {
      VtSet out;
      for (const auto& mu : s)
        if (!dec.includes(Type::prim(PrimClass::Atomic), type_of(args[0], mu, rules)))
          out.insert(mu);
      return out;
    }
    case Op::Var: {
      VtSet out;
      for (const auto& mu : s)
        if (dec.includes(type_of(args[0], mu, rules), Type::one())) out.insert(mu);
      return out;
    }
    case Op::CheckAtom:
      return meet_vts(s, Type::prim(PrimClass::Atom), args[0], rules);
    case Op::CheckAtomic:
      return meet_vts(s, Type::prim(PrimClass::Atomic), args[0], rules);
    case Op::CheckFloat:
      return meet_vts(s, Type::prim(PrimClass::Float), args[0], rules);
    case Op::CheckInteger:
      return meet_vts(s, Type::prim(PrimClass::Integer), args[0], rules);
    case Op::CheckNumber:
      return meet_vts(s, Type::prim(PrimClass::Number), args[0], rules);
    case Op::CheckPut:
      return meet_vts(s, Type::or_(Type::prim(PrimClass::Atom), Type::prim(PrimClass::Integer)),
                      args[0], rules);
    case Op::CheckString:
      return meet_vts(s, Type::prim(PrimClass::String), args[0], rules);
    case Op::Unify: {
      auto unifier = mgu(args[0], args[1]);
      if (!unifier) return VtSet{};
      return solve(eq(*unifier), s, rules);
    }
    case Op::Format: {
      // The format-string argument: an atom, a list of character codes, or a
      // string. For format/3 it is the second argument.
      const Term& t = call.arity() == 3 ? args[1] : args[0];
      Type r = Type::or_(Type::or_(Type::prim(PrimClass::Atom),
                                   Type::con("list", {Type::prim(PrimClass::Integer)})),
                         Type::prim(PrimClass::String));
      if (!rules.has_ctor("list") || rules.ctor_arity("list") != 1)
        throw DomainError("built-in requires a unary 'list' type constructor in the rule set");
      return meet_vts(s, r, t, rules);
    }
    case Op::Arith: {
      VtSet out = meet_vts(s, Type::prim(PrimClass::Number), args[0], rules);
      return meet_vts(out, Type::prim(PrimClass::Number), args[1], rules);
    }
    case Op::Length: {
      VtSet out = meet_vts(s, list_of_one(rules), args[0], rules);
      return meet_vts(out, Type::prim(PrimClass::Integer), args[1], rules);
    }
    case Op::Compare:
      return meet_vts(s, Type::prim(PrimClass::Atom), args[0], rules);
    case Op::Name: {
      VtSet out = meet_vts(
          s, Type::or_(Type::prim(PrimClass::Atom), Type::prim(PrimClass::Integer)), args[0],
          rules);
      return meet_vts(out, Type::prim(PrimClass::String), args[1], rules);
    }
  }
  return VtSet{};
}

}  // namespace tyra
