#include "tyra/term.hpp"

#include <cmath>
#include <sstream>

namespace tyra {

namespace {

constexpr const char* kRhoName = "$rho";
constexpr const char* kFreshAtomName = "$atom";
constexpr const char* kConsName = "[|]";
constexpr const char* kNilName = "[]";

bool needs_quotes(const std::string& name) {
  if (name.empty()) return true;
  if (name == kNilName || name == kConsName || name == "!" || name == ";") return false;
  if (name[0] == '$') return false;
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return true;
    return false;
  }
  // Symbolic atoms such as =, @<, =:= print bare.
  static const std::string sym = "+-*/\\^<>=~:.?@#&";
  for (char c : name)
    if (sym.find(c) == std::string::npos) return true;
  return false;
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->text = std::move(name);
  return Term(std::move(n));
}

Term Term::compound(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->text = std::move(name);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::integer(long long v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->ival = v;
  return Term(std::move(n));
}

Term Term::floating(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Float;
  n->fval = v;
  return Term(std::move(n));
}

Term Term::str(std::string v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Str;
  n->text = std::move(v);
  return Term(std::move(n));
}

Term Term::list(const std::vector<Term>& items) { return list(items, compound(kNilName)); }

Term Term::list(const std::vector<Term>& items, Term tail) {
  Term t = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    t = compound(kConsName, {*it, t});
  return t;
}

Term Term::rho() { return compound(kRhoName); }

Term Term::fresh_atom() { return compound(kFreshAtomName); }

FnSym Term::symbol() const {
  if (!is_compound()) throw DomainError("symbol() on non-compound term");
  return FnSym{name(), arity()};
}

int Term::compare(const Term& other) const {
  if (node_ == other.node_) return 0;
  auto ka = static_cast<int>(kind());
  auto kb = static_cast<int>(other.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (kind()) {
    case Kind::Var:
      return name().compare(other.name());
    case Kind::Int:
      return int_value() < other.int_value() ? -1 : int_value() > other.int_value() ? 1 : 0;
    case Kind::Float:
      return float_value() < other.float_value() ? -1
             : float_value() > other.float_value() ? 1 : 0;
    case Kind::Str:
      return name().compare(other.name());
    case Kind::Compound: {
      if (int c = name().compare(other.name())) return c < 0 ? -1 : 1;
      if (arity() != other.arity()) return arity() < other.arity() ? -1 : 1;
      for (int i = 0; i < arity(); ++i)
        if (int c = args()[i].compare(other.args()[i])) return c;
      return 0;
    }
  }
  return 0;
}

std::string Term::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Var:
      os << name();
      break;
    case Kind::Int:
      os << int_value();
      break;
    case Kind::Float: {
      double v = float_value();
      if (v == std::floor(v) && std::isfinite(v)) {
        os << static_cast<long long>(v) << ".0";
      } else {
        os << v;
      }
      break;
    }
    case Kind::Str:
      os << '"' << name() << '"';
      break;
    case Kind::Compound: {
      if (name() == kConsName && arity() == 2) {
        // Render list cells as [a,b|T].
        os << '[' << args()[0].to_string();
        Term t = args()[1];
        while (t.is_compound() && t.name() == kConsName && t.arity() == 2) {
          os << ',' << t.args()[0].to_string();
          t = t.args()[1];
        }
        if (!(t.is_compound() && t.name() == kNilName && t.arity() == 0))
          os << '|' << t.to_string();
        os << ']';
        break;
      }
      if (needs_quotes(name())) {
        os << '\'' << name() << '\'';
      } else {
        os << name();
      }
      if (arity() > 0) {
        os << '(';
        for (int i = 0; i < arity(); ++i) {
          if (i) os << ',';
          os << args()[i].to_string();
        }
        os << ')';
      }
      break;
    }
  }
  return os.str();
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_var()) {
    out.insert(name());
    return;
  }
  for (const Term& a : args()) a.collect_vars(out);
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

std::optional<FnSym> match_symbol(const Term& t) {
  if (t.is_compound()) return t.symbol();
  if (t.kind() == Term::Kind::Int) return FnSym{std::to_string(t.int_value()), 0};
  return std::nullopt;
}

bool is_numeric_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.name() == var;
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

Term apply_subst(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (!t.is_compound() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_subst(s, a));
  return Term::compound(t.name(), std::move(args));
}

namespace {

// Binds x to t, composing into the accumulated substitution so the result
// stays idempotent.
void bind(Substitution& s, const std::string& x, const Term& t) {
  Substitution unit{{x, t}};
  for (auto& [v, bound] : s) bound = apply_subst(unit, bound);
  s.emplace(x, t);
}

}  // namespace

std::optional<Substitution> mgu(const EquationSet& eqs) {
  Substitution s;
  std::vector<Equation> work(eqs.begin(), eqs.end());
  while (!work.empty()) {
    Equation e = work.back();
    work.pop_back();
    Term l = apply_subst(s, e.lhs);
    Term r = apply_subst(s, e.rhs);
    if (l == r) continue;
    if (!l.is_var() && r.is_var()) std::swap(l, r);
    if (l.is_var()) {
      if (occurs(l.name(), r)) return std::nullopt;
      bind(s, l.name(), r);
      continue;
    }
    if (l.kind() != r.kind()) return std::nullopt;
    if (!l.is_compound()) return std::nullopt;  // distinct literals
    if (l.name() != r.name() || l.arity() != r.arity()) return std::nullopt;
    for (int i = 0; i < l.arity(); ++i)
      work.push_back({l.args()[i], r.args()[i]});
  }
  return s;
}

std::optional<Substitution> mgu(const Term& l, const Term& r) {
  return mgu(EquationSet{{l, r}});
}

EquationSet eq(const Substitution& s) {
  EquationSet out;
  for (const auto& [v, t] : s) out.push_back({Term::var(v), t});
  return out;
}

std::string psi_var(const std::string& name) { return name + "'"; }

bool is_psi_var(const std::string& name) {
  return !name.empty() && name.back() == '\'';
}

Term psi_rename(const Term& t) {
  if (t.is_var()) {
    if (is_psi_var(t.name()))
      throw DomainError("psi_rename: variable already in the renamed namespace: " + t.name());
    return Term::var(psi_var(t.name()));
  }
  if (!t.is_compound() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(psi_rename(a));
  return Term::compound(t.name(), std::move(args));
}

Term ground_encode(const Term& t) {
  if (t.is_var()) return Term::rho();
  if (!t.is_compound() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(ground_encode(a));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace tyra
