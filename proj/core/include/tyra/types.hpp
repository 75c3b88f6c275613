#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tyra/term.hpp"

namespace tyra {

/// Built-in leaf type classes. number and atomic are kept as atoms and
/// expanded on demand: number = (integer or float), atomic = (number or atom).
enum class PrimClass { Integer, Float, Number, String, Atom, Atomic };

const char* prim_name(PrimClass c);
std::optional<PrimClass> prim_by_name(const std::string& name);

/// Type expressions over Cons ∪ {and, or, 1, 0} plus the built-in classes.
/// The complement operator (~) only appears inside the decision module;
/// operations whose contract requires complement-free inputs throw on it.
class Type {
 public:
  enum class Kind { Zero, One, And, Or, Not, Con, Prim };

  static Type zero();
  static Type one();
  static Type con(std::string ctor, std::vector<Type> args = {});
  static Type prim(PrimClass c);
  /// Unit-simplifying connectives: and with 1 / or with 0 drop the unit,
  /// and with 0 / or with 1 collapse. No other simplification.
  static Type and_(const Type& a, const Type& b);
  static Type or_(const Type& a, const Type& b);
  /// Structural connectives, no simplification at all (dnf uses these).
  static Type and_raw(Type a, Type b);
  static Type or_raw(Type a, Type b);
  static Type not_(Type a);

  Kind kind() const { return node_->kind; }
  bool is_atomic() const {
    return kind() != Kind::And && kind() != Kind::Or && kind() != Kind::Not;
  }
  PrimClass prim_class() const { return node_->prim; }
  const std::string& ctor() const { return node_->ctor; }
  const std::vector<Type>& args() const { return node_->args; }
  bool complement_free() const;

  int compare(const Type& other) const;
  friend bool operator==(const Type& a, const Type& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Type& a, const Type& b) { return a.compare(b) != 0; }
  friend bool operator<(const Type& a, const Type& b) { return a.compare(b) < 0; }

  /// Infix rendering: (R1 or R2), (R1 and R2), ~R, c(...), 1, 0.
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    PrimClass prim = PrimClass::Integer;
    std::string ctor;
    std::vector<Type> args;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A type scheme: a parameter β or a flat application c(β1,...,βm).
struct TypeScheme {
  bool is_param = true;
  std::string name;                 // parameter name or constructor name
  std::vector<std::string> params;  // constructor schemes only

  static TypeScheme param(std::string n) { return {true, std::move(n), {}}; }
  static TypeScheme ctor(std::string n, std::vector<std::string> ps = {}) {
    return {false, std::move(n), std::move(ps)};
  }
  std::string to_string() const;
};

/// A type rule c(β1,...,βm) ⇀ f(τ1,...,τn).
struct TypeRule {
  std::string head_ctor;
  std::vector<std::string> head_params;
  FnSym rhs_sym;
  std::vector<TypeScheme> rhs_args;

  std::string to_string() const;
};

/// The parameterized type definitions Δ together with the signature they
/// induce and the designated 0-ary atom symbols.
class RuleSet {
 public:
  void add_rule(TypeRule rule);
  /// Declares a 0-ary symbol as a Prolog atom (and adds it to the signature).
  void declare_atom(const std::string& name);
  /// Registers a symbol used by a program: n>0 symbols must already have a
  /// rule; unknown constants become atom symbols.
  void note_program_symbol(const FnSym& sym);
  /// Checks the structural invariants; throws DomainError on violation.
  void validate() const;

  const std::vector<TypeRule>& rules() const { return rules_; }
  const std::set<FnSym>& signature() const { return signature_; }
  const std::set<std::string>& atom_symbols() const { return atom_symbols_; }
  const std::map<std::string, int>& ctor_arities() const { return ctor_arity_; }

  bool has_ctor(const std::string& name) const { return ctor_arity_.count(name) > 0; }
  int ctor_arity(const std::string& name) const;
  bool is_atom_symbol(const std::string& name) const;

  /// Rules whose head constructor is `ctor` and right-hand symbol is `sym`.
  std::vector<const TypeRule*> rules_for(const std::string& ctor, const FnSym& sym) const;
  std::vector<const TypeRule*> rules_for_sym(const FnSym& sym) const;
  std::vector<const TypeRule*> rules_for_ctor(const std::string& ctor) const;

 private:
  std::vector<TypeRule> rules_;
  std::map<std::string, int> ctor_arity_;
  std::set<FnSym> signature_;
  std::set<std::string> atom_symbols_;
  std::map<std::pair<std::string, FnSym>, std::vector<int>> by_pair_;
  std::map<FnSym, std::vector<int>> by_sym_;
  std::map<std::string, std::vector<int>> by_ctor_;
};

/// κ(τ): parameters outside dom(κ) default to 0.
Type scheme_apply(const std::map<std::string, Type>& kappa, const TypeScheme& tau);

/// t ∈ ⟦R⟧_Δ for complement-free R.
bool member(const Term& t, const Type& r, const RuleSet& rules);

/// Ground-encoding semantics ⟦R⟧♮ over Σ ∪ {ρ}: t must be ground; the
/// complement operator is interpreted as set complement.
bool ext_member(const Term& t, const Type& r, const RuleSet& rules);

/// Structural disjunctive normal form; distributes and over or, nothing else.
Type dnf(const Type& r);

/// Canonical form cn: DNF, compact (duplicate atoms/conjuncts removed),
/// arguments recursively canonical, fixed total order on the printed form.
Type canonicalize(const Type& r);

/// Maximum depth of an atomic sub-term, counting only Cons constructors.
int atom_depth_max(const Type& r);

/// d_k: replaces every argument of every atomic sub-term at depth exactly k
/// by 1. Requires k >= 1.
Type depth_abstract(const Type& r, int k);

}  // namespace tyra
