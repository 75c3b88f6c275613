#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tyra {

/// Raised on violations of operation preconditions (unknown constructor,
/// symbol without rules, Ψ-namespace clashes, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A function symbol, identified by name and arity.
struct FnSym {
  std::string name;
  int arity = 0;

  friend bool operator==(const FnSym& a, const FnSym& b) {
    return a.arity == b.arity && a.name == b.name;
  }
  friend bool operator<(const FnSym& a, const FnSym& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.arity < b.arity;
  }
};

/// First-order terms: variables, compound terms over function symbols, and
/// the literal leaf classes (integers, floats, strings). Immutable; copies
/// share structure.
class Term {
 public:
  enum class Kind { Var, Compound, Int, Float, Str };

  static Term var(std::string name);
  static Term compound(std::string name, std::vector<Term> args = {});
  static Term atom(std::string name) { return compound(std::move(name)); }
  static Term integer(long long v);
  static Term floating(double v);
  static Term str(std::string v);
  /// List sugar: [a,b,...|tail] built from "[|]"/2 and "[]"/0.
  static Term list(const std::vector<Term>& items);
  static Term list(const std::vector<Term>& items, Term tail);
  /// The constant ρ used by the ground encoding; not part of any signature.
  static Term rho();
  /// A representative of the inexhaustible reservoir of undeclared atoms.
  static Term fresh_atom();

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_compound() const { return kind() == Kind::Compound; }
  bool is_literal() const {
    return kind() == Kind::Int || kind() == Kind::Float || kind() == Kind::Str;
  }

  /// Variable name, functor name, or string value depending on kind.
  const std::string& name() const { return node_->text; }
  long long int_value() const { return node_->ival; }
  double float_value() const { return node_->fval; }
  const std::vector<Term>& args() const { return node_->args; }
  int arity() const { return static_cast<int>(node_->args.size()); }
  FnSym symbol() const;

  int compare(const Term& other) const;
  friend bool operator==(const Term& a, const Term& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return a.compare(b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return a.compare(b) < 0; }

  std::string to_string() const;
  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

 private:
  struct Node {
    Kind kind;
    std::string text;
    long long ival = 0;
    double fval = 0;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Idempotent substitutions, represented as finite maps without identity
/// bindings. `fail` is modelled by std::nullopt at the mgu interface.
using Substitution = std::map<std::string, Term>;

struct Equation {
  Term lhs;
  Term rhs;
};
using EquationSet = std::vector<Equation>;

bool occurs(const std::string& var, const Term& t);

/// The signature symbol a term matches when unfolding type rules: compounds
/// match their own symbol, integer literals match the 0-ary symbol spelled
/// like them (so `nat -> 0` types the integer 0). Other literals and
/// variables match nothing.
std::optional<FnSym> match_symbol(const Term& t);

/// Whether a symbol name is the decimal spelling of an integer literal.
bool is_numeric_name(const std::string& name);

/// Simultaneous replacement of bound variables.
Term apply_subst(const Substitution& s, const Term& t);

/// Most general unifier with occurs-check; std::nullopt on clash/cycle.
std::optional<Substitution> mgu(const EquationSet& eqs);
std::optional<Substitution> mgu(const Term& l, const Term& r);

/// eq(θ) = {x = θ(x) | x in dom(θ)}, in solved form.
EquationSet eq(const Substitution& s);

/// The fixed renaming Ψ into a disjoint variable namespace. Deterministic:
/// a prime is appended to the variable name.
std::string psi_var(const std::string& name);
bool is_psi_var(const std::string& name);
Term psi_rename(const Term& t);

/// χ: replaces every variable with the constant ρ.
Term ground_encode(const Term& t);

}  // namespace tyra
