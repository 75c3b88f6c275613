#include "tyra/domain.hpp"

#include <algorithm>
#include <sstream>

#include "tyra/decision.hpp"

namespace tyra {

void VariableTyping::set(const std::string& var, const Type& t) {
  if (t.kind() == Type::Kind::One) {
    entries_.erase(var);
  } else {
    entries_.insert_or_assign(var, t);
  }
}

Type VariableTyping::at(const std::string& var) const {
  auto it = entries_.find(var);
  return it == entries_.end() ? Type::one() : it->second;
}

int VariableTyping::compare(const VariableTyping& o) const {
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  for (; a != entries_.end() && b != o.entries_.end(); ++a, ++b) {
    if (int c = a->first.compare(b->first)) return c < 0 ? -1 : 1;
    if (int c = a->second.compare(b->second)) return c;
  }
  if (a != entries_.end()) return 1;
  if (b != o.entries_.end()) return -1;
  return 0;
}

std::string VariableTyping::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, t] : entries_) {
    if (!first) os << ", ";
    first = false;
    os << v << '/' << t.to_string();
  }
  os << '}';
  return os.str();
}

VtSet::VtSet(std::vector<VariableTyping> ts) {
  for (auto& t : ts) insert(std::move(t));
}

VtSet VtSet::singleton(VariableTyping t) {
  VtSet s;
  s.insert(std::move(t));
  return s;
}

void VtSet::insert(VariableTyping t) {
  auto it = std::lower_bound(typings_.begin(), typings_.end(), t);
  if (it != typings_.end() && *it == t) return;
  typings_.insert(it, std::move(t));
}

std::vector<std::string> VtSet::mentioned_vars() const {
  std::set<std::string> vars;
  for (const auto& mu : typings_)
    for (const auto& [v, t] : mu.entries()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

std::string VtSet::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < typings_.size(); ++i) {
    if (i) os << ", ";
    os << typings_[i].to_string();
  }
  os << ']';
  return os.str();
}

VtSet meet(const VtSet& s1, const VtSet& s2) {
  VtSet out;
  for (const auto& mu : s1) {
    for (const auto& nu : s2) {
      VariableTyping m = mu;
      for (const auto& [v, t] : nu.entries()) m.set(v, Type::and_(m.at(v), t));
      out.insert(std::move(m));
    }
  }
  return out;
}

VtSet join(const VtSet& s1, const VtSet& s2, DecisionEngine& dec) {
  VtSet u = s1;
  for (const auto& nu : s2) u.insert(nu);
  return dec.remove_redundant(u);
}

VtSet disjoint_union(const VtSet& s1, const VtSet& s2) {
  VtSet out;
  for (const auto& mu : s1) {
    for (const auto& nu : s2) {
      VariableTyping m = mu;
      for (const auto& [v, t] : nu.entries()) {
        if (m.has(v))
          throw DomainError("disjoint_union: overlapping variable " + v);
        m.set(v, t);
      }
      out.insert(std::move(m));
    }
  }
  return out;
}

VtSet restrict_out(const VtSet& s, DecisionEngine& dec) {
  VtSet out;
  for (const auto& mu : s) {
    bool empty = false;
    for (const auto& [v, t] : mu.entries()) {
      if (dec.etype(t)) {
        empty = true;
        break;
      }
    }
    if (!empty)
      out.insert(mu.restrict_to([](const std::string& v) { return !is_psi_var(v); }));
  }
  return out;
}

bool satisfies(const Substitution& theta, const VariableTyping& mu, const RuleSet& rules) {
  for (const auto& [v, t] : mu.entries())
    if (!member(apply_subst(theta, Term::var(v)), t, rules)) return false;
  return true;
}

bool satisfies(const Substitution& theta, const VtSet& s, const RuleSet& rules) {
  for (const auto& mu : s)
    if (satisfies(theta, mu, rules)) return true;
  return false;
}

VariableTyping psi_rename(const VariableTyping& mu) {
  VariableTyping out;
  for (const auto& [v, t] : mu.entries()) {
    if (is_psi_var(v))
      throw DomainError("psi_rename: variable already in the renamed namespace: " + v);
    out.set(psi_var(v), t);
  }
  return out;
}

VtSet psi_rename(const VtSet& s) {
  VtSet out;
  for (const auto& mu : s) out.insert(psi_rename(mu));
  return out;
}

}  // namespace tyra
