#include "tyra/decision.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace tyra {

SeqExpr SeqExpr::seq(std::vector<Type> items) {
  SeqExpr e;
  e.kind = Kind::Seq;
  e.items = std::move(items);
  return e;
}

SeqExpr SeqExpr::and_(std::vector<SeqExpr> kids) {
  SeqExpr e;
  e.kind = Kind::And;
  e.kids = std::move(kids);
  return e;
}

SeqExpr SeqExpr::or_(std::vector<SeqExpr> kids) {
  SeqExpr e;
  e.kind = Kind::Or;
  e.kids = std::move(kids);
  return e;
}

SeqExpr SeqExpr::not_(SeqExpr inner) {
  SeqExpr e;
  e.kind = Kind::Not;
  e.kids = {std::move(inner)};
  return e;
}

int SeqExpr::dimension() const {
  switch (kind) {
    case Kind::Seq:
      return static_cast<int>(items.size());
    case Kind::Not:
      return kids[0].dimension();
    default:
      if (kids.empty()) throw DomainError("sequence expression without operands");
      int d = kids[0].dimension();
      for (const SeqExpr& k : kids)
        if (k.dimension() != d)
          throw DomainError("sequence expression mixes dimensions");
      return d;
  }
}

std::string SeqExpr::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Seq: {
      os << '<';
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) os << ',';
        os << items[i].to_string();
      }
      os << '>';
      break;
    }
    case Kind::Not:
      os << '~' << kids[0].to_string();
      break;
    case Kind::And:
    case Kind::Or: {
      const char* op = kind == Kind::And ? " and " : " or ";
      os << '(';
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) os << op;
        os << kids[i].to_string();
      }
      os << ')';
      break;
    }
  }
  return os.str();
}

SeqExpr push_complement(const SeqExpr& e) {
  if (e.kind != SeqExpr::Kind::Not)
    throw DomainError("push_complement expects a complemented sequence expression");
  const SeqExpr& inner = e.kids[0];
  switch (inner.kind) {
    case SeqExpr::Kind::Or: {
      std::vector<SeqExpr> kids;
      for (const SeqExpr& k : inner.kids) kids.push_back(push_complement(SeqExpr::not_(k)));
      return SeqExpr::and_(std::move(kids));
    }
    case SeqExpr::Kind::And: {
      std::vector<SeqExpr> kids;
      for (const SeqExpr& k : inner.kids) kids.push_back(push_complement(SeqExpr::not_(k)));
      return SeqExpr::or_(std::move(kids));
    }
    case SeqExpr::Kind::Seq: {
      int k = static_cast<int>(inner.items.size());
      if (k < 1) throw DomainError("push_complement on a zero-dimension sequence");
      std::vector<SeqExpr> disjuncts;
      for (int l = 0; l < k; ++l) {
        std::vector<Type> items;
        items.reserve(k);
        for (int i = 0; i < k; ++i)
          items.push_back(i == l ? Type::not_(inner.items[i]) : Type::one());
        disjuncts.push_back(SeqExpr::seq(std::move(items)));
      }
      if (disjuncts.size() == 1) return disjuncts[0];
      return SeqExpr::or_(std::move(disjuncts));
    }
    case SeqExpr::Kind::Not:
      throw DomainError("push_complement: nested sequence complement");
  }
  throw DomainError("push_complement: malformed sequence expression");
}

namespace {

// DNF over sequences: each result is a plain sequence whose positions carry
// the accumulated (possibly complemented) per-position conjunctions.
std::vector<std::vector<Type>> seq_dnf(const SeqExpr& e, bool positive) {
  switch (e.kind) {
    case SeqExpr::Kind::Not:
      return seq_dnf(e.kids[0], !positive);
    case SeqExpr::Kind::Seq: {
      if (positive) return {e.items};
      // push(~<R1..Rk>): one single-position complement per disjunct.
      std::vector<std::vector<Type>> out;
      int k = static_cast<int>(e.items.size());
      for (int l = 0; l < k; ++l) {
        std::vector<Type> items;
        for (int i = 0; i < k; ++i)
          items.push_back(i == l ? Type::not_(e.items[i]) : Type::one());
        out.push_back(std::move(items));
      }
      return out;
    }
    case SeqExpr::Kind::And:
    case SeqExpr::Kind::Or: {
      bool conjunctive = (e.kind == SeqExpr::Kind::And) == positive;
      std::vector<std::vector<std::vector<Type>>> parts;
      for (const SeqExpr& k : e.kids) parts.push_back(seq_dnf(k, positive));
      if (!conjunctive) {
        std::vector<std::vector<Type>> out;
        for (auto& p : parts)
          for (auto& s : p) out.push_back(std::move(s));
        return out;
      }
      std::vector<std::vector<Type>> acc = {{}};
      bool first = true;
      for (auto& p : parts) {
        std::vector<std::vector<Type>> next;
        for (const auto& a : acc) {
          for (const auto& s : p) {
            if (first) {
              next.push_back(s);
            } else {
              if (a.size() != s.size())
                throw DomainError("sequence expression mixes dimensions");
              std::vector<Type> merged;
              merged.reserve(a.size());
              for (size_t i = 0; i < a.size(); ++i)
                merged.push_back(Type::and_(a[i], s[i]));
              next.push_back(std::move(merged));
            }
          }
        }
        acc = std::move(next);
        first = false;
      }
      return acc;
    }
  }
  throw DomainError("malformed sequence expression");
}

// Expansion of the derived built-in classes.
Type expand_prim(PrimClass c) {
  switch (c) {
    case PrimClass::Number:
      return Type::or_raw(Type::prim(PrimClass::Integer), Type::prim(PrimClass::Float));
    case PrimClass::Atomic:
      return Type::or_raw(
          Type::or_raw(Type::prim(PrimClass::Integer), Type::prim(PrimClass::Float)),
          Type::prim(PrimClass::Atom));
    default:
      return Type::prim(c);
  }
}

struct LiteralSets {
  std::map<std::string, Type> pos;
  std::map<std::string, Type> neg;
  bool contradictory = false;
};

void merge_literal(LiteralSets& ls, const Type& atom, bool positive) {
  std::string k = atom.to_string();
  if (positive) {
    if (ls.neg.count(k)) ls.contradictory = true;
    ls.pos.emplace(std::move(k), atom);
  } else {
    if (ls.pos.count(k)) ls.contradictory = true;
    ls.neg.emplace(std::move(k), atom);
  }
}

}  // namespace

DecisionEngine::DecisionEngine(const RuleSet& rules, bool tabling)
    : rules_(&rules), tabling_(tabling) {}

std::vector<DecisionEngine::Goal> DecisionEngine::normalize(const Type& r) const {
  // NNF with built-in class expansion, then DNF over literals.
  std::function<std::vector<LiteralSets>(const Type&, bool)> walk =
      [&](const Type& t, bool positive) -> std::vector<LiteralSets> {
    switch (t.kind()) {
      case Type::Kind::Zero:
        if (positive) return {};
        return {LiteralSets{}};
      case Type::Kind::One:
        if (positive) return {LiteralSets{}};
        return {};
      case Type::Kind::Not:
        return walk(t.args()[0], !positive);
      case Type::Kind::And:
      case Type::Kind::Or: {
        bool conjunctive = (t.kind() == Type::Kind::And) == positive;
        auto left = walk(t.args()[0], positive);
        auto right = walk(t.args()[1], positive);
        if (!conjunctive) {
          for (auto& ls : right) left.push_back(std::move(ls));
          return left;
        }
        std::vector<LiteralSets> out;
        for (const auto& a : left) {
          for (const auto& b : right) {
            LiteralSets m = a;
            for (const auto& [k, atom] : b.pos) merge_literal(m, atom, true);
            for (const auto& [k, atom] : b.neg) merge_literal(m, atom, false);
            m.contradictory = m.contradictory || a.contradictory || b.contradictory;
            if (!m.contradictory) out.push_back(std::move(m));
          }
        }
        return out;
      }
      case Type::Kind::Prim: {
        PrimClass c = t.prim_class();
        if (c == PrimClass::Number || c == PrimClass::Atomic)
          return walk(expand_prim(c), positive);
        LiteralSets ls;
        merge_literal(ls, t, positive);
        return {ls};
      }
      case Type::Kind::Con: {
        if (rules_->ctor_arity(t.ctor()) != static_cast<int>(t.args().size()))
          throw DomainError("constructor arity mismatch in type: " + t.to_string());
        for (const Type& a : t.args())
          if (!a.complement_free())
            throw DomainError("complement inside constructor argument: " + t.to_string());
        LiteralSets ls;
        merge_literal(ls, canonicalize(t), positive);
        return {ls};
      }
    }
    return {};
  };

  std::vector<Goal> goals;
  std::set<std::string> seen;
  for (LiteralSets& ls : walk(r, true)) {
    if (ls.contradictory) continue;
    Goal g;
    for (auto& [k, atom] : ls.pos) g.pos.push_back(atom);
    for (auto& [k, atom] : ls.neg) g.neg.push_back(atom);
    std::ostringstream key;
    bool first = true;
    for (const Type& a : g.pos) {
      if (!first) key << " and ";
      first = false;
      key << a.to_string();
    }
    for (const Type& a : g.neg) {
      if (!first) key << " and ";
      first = false;
      key << '~' << a.to_string();
    }
    if (first) key << '1';
    g.key = key.str();
    if (seen.insert(g.key).second) goals.push_back(std::move(g));
  }
  // Canonical disjunct order, so syntactically different but canonically
  // equal queries share one memo key.
  std::sort(goals.begin(), goals.end(),
            [](const Goal& a, const Goal& b) { return a.key < b.key; });
  return goals;
}

// Per-computation state of the decision procedure.
struct DecisionEngine::Work {
  std::map<std::string, bool>* table;  // shared when tabling, scratch otherwise
  struct OnStack {
    int index;
    std::optional<bool> result;  // set once the goal completes, until its SCC closes
  };
  std::map<std::string, OnStack> onstack;
  std::vector<std::string> scc_stack;
  struct Frame {
    int index;
    int lowlink;
  };
  std::vector<Frame> frames;
  int next_index = 0;
  std::uint64_t explored = 0;
};

bool DecisionEngine::etype(const Type& r) {
  stats_.total_checks++;
  std::vector<Goal> goals = normalize(r);
  std::ostringstream keyos;
  for (size_t i = 0; i < goals.size(); ++i) {
    if (i) keyos << " or ";
    keyos << goals[i].key;
  }
  std::string key = goals.empty() ? "0" : keyos.str();
  if (seen_keys_.insert(key).second) stats_.distinct_checks++;
  if (tabling_) {
    auto it = table_.find(key);
    if (it != table_.end()) {
      stats_.hits++;
      return it->second;
    }
  }
  stats_.misses++;
  stats_.computations++;
  std::map<std::string, bool> scratch;
  Work w;
  w.table = tabling_ ? &table_ : &scratch;
  bool empty = true;
  for (const Goal& g : goals) {
    if (goal_nonempty(g, w)) {
      empty = false;
      break;
    }
  }
  last_goal_count_ = w.explored;
  stats_.goal_explorations += w.explored;
  if (tabling_) table_[key] = empty;
  return empty;
}

bool DecisionEngine::etype_seq(const SeqExpr& e) {
  e.dimension();  // dimension check
  for (const std::vector<Type>& seq : seq_dnf(e, true)) {
    bool seq_empty = false;
    for (const Type& t : seq) {
      if (etype(t)) {
        seq_empty = true;
        break;
      }
    }
    if (!seq_empty) return false;
  }
  return true;
}

bool DecisionEngine::includes(const Type& r1, const Type& r2) {
  return etype(Type::and_raw(r2, Type::not_(r1)));
}

bool DecisionEngine::equiv(const Type& r1, const Type& r2) {
  return includes(r1, r2) && includes(r2, r1);
}

bool DecisionEngine::vtset_leq(const VtSet& s1, const VtSet& s2) {
  if (s1.empty()) return true;
  std::set<std::string> vars;
  for (const std::string& v : s1.mentioned_vars()) vars.insert(v);
  for (const std::string& v : s2.mentioned_vars()) vars.insert(v);
  if (vars.empty()) return !s2.empty();  // both sides all-One typings
  auto tuple_of = [&](const VariableTyping& mu) {
    std::vector<Type> items;
    items.reserve(vars.size());
    for (const std::string& v : vars) items.push_back(mu.at(v));
    return SeqExpr::seq(std::move(items));
  };
  std::vector<SeqExpr> left;
  for (const auto& mu : s1) left.push_back(tuple_of(mu));
  SeqExpr lhs = left.size() == 1 ? left[0] : SeqExpr::or_(std::move(left));
  if (s2.empty()) return etype_seq(lhs);
  std::vector<SeqExpr> right;
  for (const auto& nu : s2) right.push_back(tuple_of(nu));
  SeqExpr rhs = right.size() == 1 ? right[0] : SeqExpr::or_(std::move(right));
  return etype_seq(SeqExpr::and_({lhs, SeqExpr::not_(rhs)}));
}

bool DecisionEngine::vtset_equiv(const VtSet& s1, const VtSet& s2) {
  return vtset_leq(s1, s2) && vtset_leq(s2, s1);
}

VtSet DecisionEngine::remove_redundant(const VtSet& s) {
  // (a) typings with an entry denoting the empty set.
  std::vector<VariableTyping> alive;
  for (const auto& mu : s) {
    bool dead = false;
    for (const auto& [v, t] : mu.entries()) {
      if (etype(t)) {
        dead = true;
        break;
      }
    }
    if (!dead) alive.push_back(mu);
  }
  // (b) typings subsumed by the union of the remaining ones, scanned in
  // ascending canonical key order.
  std::vector<std::pair<std::string, size_t>> order;
  for (size_t i = 0; i < alive.size(); ++i) {
    VariableTyping cn;
    for (const auto& [v, t] : alive[i].entries()) cn.set(v, canonicalize(t));
    order.emplace_back(cn.to_string(), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<bool> removed(alive.size(), false);
  for (const auto& [key, i] : order) {
    VtSet rest;
    for (size_t j = 0; j < alive.size(); ++j)
      if (j != i && !removed[j]) rest.insert(alive[j]);
    if (rest.empty()) continue;
    if (vtset_leq(VtSet::singleton(alive[i]), rest)) removed[i] = true;
  }
  VtSet out;
  for (size_t i = 0; i < alive.size(); ++i)
    if (!removed[i]) out.insert(alive[i]);
  return out;
}

namespace {

void or_spine(const Type& t, std::vector<Type>& out) {
  if (t.kind() == Type::Kind::Or) {
    or_spine(t.args()[0], out);
    or_spine(t.args()[1], out);
  } else {
    out.push_back(t);
  }
}

Type compact_args(const Type& t, DecisionEngine& dec) {
  switch (t.kind()) {
    case Type::Kind::Con: {
      std::vector<Type> args;
      args.reserve(t.args().size());
      for (const Type& a : t.args()) args.push_back(dec.compact(a));
      return Type::con(t.ctor(), std::move(args));
    }
    case Type::Kind::And:
      return Type::and_raw(compact_args(t.args()[0], dec), compact_args(t.args()[1], dec));
    case Type::Kind::Or:
      return Type::or_raw(compact_args(t.args()[0], dec), compact_args(t.args()[1], dec));
    default:
      return t;
  }
}

}  // namespace

Type DecisionEngine::compact(const Type& r) {
  Type c = canonicalize(compact_args(r, *this));
  std::vector<Type> disjuncts;
  or_spine(c, disjuncts);
  std::vector<Type> live;
  for (const Type& d : disjuncts)
    if (!etype(d)) live.push_back(d);
  if (live.empty()) return Type::zero();
  // Drop disjuncts subsumed by another; on mutual subsumption keep the
  // earlier (canonically smaller) one.
  std::vector<bool> dropped(live.size(), false);
  for (size_t i = 0; i < live.size(); ++i) {
    if (dropped[i]) continue;
    for (size_t j = 0; j < live.size(); ++j) {
      if (i == j || dropped[j]) continue;
      if (includes(live[j], live[i]) && (!includes(live[i], live[j]) || j < i)) {
        dropped[i] = true;
        break;
      }
    }
  }
  std::vector<Type> kept;
  for (size_t i = 0; i < live.size(); ++i)
    if (!dropped[i]) kept.push_back(live[i]);
  Type acc = kept.back();
  for (auto it = kept.rbegin() + 1; it != kept.rend(); ++it) acc = Type::or_raw(*it, acc);
  return acc;
}

bool DecisionEngine::goal_nonempty(const Goal& g, Work& w) {
  {
    auto it = w.table->find(g.key);
    if (it != w.table->end()) return !it->second;
  }
  {
    auto it = w.onstack.find(g.key);
    if (it != w.onstack.end()) {
      if (!w.frames.empty())
        w.frames.back().lowlink = std::min(w.frames.back().lowlink, it->second.index);
      // In progress: assumed empty on this path. Completed but uncommitted:
      // provisional result.
      return it->second.result.value_or(false);
    }
  }
  int idx = w.next_index++;
  w.onstack.emplace(g.key, Work::OnStack{idx, std::nullopt});
  w.scc_stack.push_back(g.key);
  w.frames.push_back({idx, idx});
  w.explored++;
  bool result = explore(g, w);
  Work::Frame frame = w.frames.back();
  w.frames.pop_back();
  w.onstack[g.key].result = result;
  if (frame.lowlink == frame.index) {
    // SCC root: all members are final now.
    while (true) {
      std::string k = std::move(w.scc_stack.back());
      w.scc_stack.pop_back();
      auto it = w.onstack.find(k);
      (*w.table)[k] = !it->second.result.value();
      w.onstack.erase(it);
      if (k == g.key) break;
    }
  } else if (!w.frames.empty()) {
    w.frames.back().lowlink = std::min(w.frames.back().lowlink, frame.lowlink);
  }
  return result;
}

bool DecisionEngine::leaf_member(const Term& leaf, const Type& atom) const {
  return ext_member(leaf, atom, *rules_);
}

bool DecisionEngine::leaf_viable(const Goal& g, const Term& leaf) const {
  for (const Type& a : g.pos)
    if (!leaf_member(leaf, a)) return false;
  for (const Type& a : g.neg)
    if (leaf_member(leaf, a)) return false;
  return true;
}

bool DecisionEngine::explore(const Goal& g, Work& w) {
  // ρ inhabits 1 only, so a goal without positive atoms always has a witness.
  if (g.pos.empty()) return true;
  // Reservoir representatives of the built-in leaf classes. The integer
  // representative must not collide with a numeric signature symbol.
  long long fresh_int = 1;
  while (rules_->signature().count(FnSym{std::to_string(fresh_int), 0})) ++fresh_int;
  const Term reservoir[] = {Term::integer(fresh_int), Term::floating(1.5), Term::str("s"),
                            Term::fresh_atom()};
  for (const Term& leaf : reservoir)
    if (leaf_viable(g, leaf)) return true;
  for (const FnSym& f : rules_->signature()) {
    if (f.arity == 0) {
      Term leaf = is_numeric_name(f.name) ? Term::integer(std::stoll(f.name))
                                          : Term::compound(f.name);
      if (leaf_viable(g, leaf)) return true;
    } else {
      if (compound_head_viable(g, f, w)) return true;
    }
  }
  return false;
}

bool DecisionEngine::position_nonempty(const Type& expr, Work& w) {
  for (const Goal& g : normalize(expr)) {
    if (goal_nonempty(g, w)) return true;
  }
  return false;
}

bool DecisionEngine::compound_head_viable(const Goal& g, const FnSym& f, Work& w) {
  const int n = f.arity;
  // A compound term inhabits no built-in leaf class.
  for (const Type& a : g.pos)
    if (a.kind() == Type::Kind::Prim) return false;

  // Instantiated argument-type vectors, one per applicable rule.
  auto instantiate = [&](const Type& atom) {
    std::vector<std::vector<Type>> alts;
    for (const TypeRule* rule : rules_->rules_for(atom.ctor(), f)) {
      std::map<std::string, Type> kappa;
      for (size_t j = 0; j < rule->head_params.size(); ++j)
        kappa.emplace(rule->head_params[j], atom.args()[j]);
      std::vector<Type> args;
      args.reserve(n);
      for (int i = 0; i < n; ++i) args.push_back(scheme_apply(kappa, rule->rhs_args[i]));
      alts.push_back(std::move(args));
    }
    return alts;
  };

  std::vector<std::vector<std::vector<Type>>> pos_alts;  // per positive atom
  for (const Type& a : g.pos) {
    auto alts = instantiate(a);
    if (alts.empty()) return false;
    pos_alts.push_back(std::move(alts));
  }
  // Negated atoms: every applicable rule must be violated at some position.
  std::vector<std::vector<std::vector<Type>>> neg_rules;  // per atom, per rule
  for (const Type& a : g.neg) {
    if (a.kind() == Type::Kind::Prim) continue;  // compounds are never leaves
    auto alts = instantiate(a);
    if (alts.empty()) continue;  // no rule for this head: already violated
    neg_rules.push_back(std::move(alts));
  }

  // Branch over rule choices for positive atoms and violated positions for
  // each rule of each negated atom, then decide the argument goals.
  std::vector<std::vector<Type>> pos_parts(n), neg_parts(n);
  std::function<bool(size_t)> choose_neg;
  std::function<bool(size_t, size_t)> choose_neg_rule;

  auto decide_positions = [&]() {
    for (int i = 0; i < n; ++i) {
      Type expr = Type::one();
      for (const Type& p : pos_parts[i]) expr = Type::and_(expr, p);
      for (const Type& q : neg_parts[i]) expr = Type::and_raw(expr, Type::not_(q));
      if (!position_nonempty(expr, w)) return false;
    }
    return true;
  };

  choose_neg_rule = [&](size_t atom_idx, size_t rule_idx) -> bool {
    if (atom_idx == neg_rules.size()) return decide_positions();
    if (rule_idx == neg_rules[atom_idx].size()) return choose_neg_rule(atom_idx + 1, 0);
    const std::vector<Type>& args = neg_rules[atom_idx][rule_idx];
    for (int l = 0; l < n; ++l) {
      neg_parts[l].push_back(args[l]);
      if (choose_neg_rule(atom_idx, rule_idx + 1)) {
        neg_parts[l].pop_back();
        return true;
      }
      neg_parts[l].pop_back();
    }
    return false;
  };

  std::function<bool(size_t)> choose_pos = [&](size_t atom_idx) -> bool {
    if (atom_idx == pos_alts.size()) return choose_neg_rule(0, 0);
    for (const std::vector<Type>& args : pos_alts[atom_idx]) {
      for (int i = 0; i < n; ++i) pos_parts[i].push_back(args[i]);
      if (choose_pos(atom_idx + 1)) {
        for (int i = 0; i < n; ++i) pos_parts[i].pop_back();
        return true;
      }
      for (int i = 0; i < n; ++i) pos_parts[i].pop_back();
    }
    return false;
  };

  return choose_pos(0);
}

namespace {

// Deterministic ground-term enumeration by increasing depth: 0-ary signature
// symbols first (sorted), then ρ and the reservoir representatives, then
// compound terms.
class TermEnumerator {
 public:
  TermEnumerator(const RuleSet& rules, std::uint64_t cap) : rules_(&rules), cap_(cap) {
    for (const FnSym& f : rules.signature())
      (f.arity == 0 ? leaves_ : compounds_).push_back(f);
  }

  bool capped() const { return capped_; }

  // Calls visit for every term of depth <= max_depth; stops early when visit
  // returns true and reports the hit through `found`.
  void run(int max_depth, const std::function<bool(const Term&)>& visit,
           std::optional<Term>& found) {
    for (int d = 1; d <= max_depth && !found && !capped_; ++d) exact(d, visit, found);
  }

 private:
  void offer(const Term& t, const std::function<bool(const Term&)>& visit,
             std::optional<Term>& found) {
    if (found || capped_) return;
    if (++attempts_ > cap_) {
      capped_ = true;
      return;
    }
    if (visit(t)) found = t;
  }

  void exact(int d, const std::function<bool(const Term&)>& visit,
             std::optional<Term>& found) {
    if (d == 1) {
      for (const Term& t : leaf_terms()) offer(t, visit, found);
      return;
    }
    for (const FnSym& f : compounds_) {
      std::vector<Term> args;
      product(f, 0, d - 1, false, args, visit, found);
      if (found || capped_) return;
    }
  }

  // Enumerates argument tuples with max depth exactly `sub`.
  void product(const FnSym& f, int pos, int sub, bool hit, std::vector<Term>& args,
               const std::function<bool(const Term&)>& visit, std::optional<Term>& found) {
    if (found || capped_) return;
    if (pos == f.arity) {
      if (hit) offer(Term::compound(f.name, args), visit, found);
      return;
    }
    bool last = pos == f.arity - 1;
    for (int d = 1; d <= sub; ++d) {
      if (last && !hit && d != sub) continue;
      std::vector<Term> pool = terms_exact(d);
      for (const Term& t : pool) {
        args.push_back(t);
        product(f, pos + 1, sub, hit || d == sub, args, visit, found);
        args.pop_back();
        if (found || capped_) return;
      }
    }
  }

  std::vector<Term> leaf_terms() const {
    std::vector<Term> out;
    for (const FnSym& f : leaves_)
      out.push_back(is_numeric_name(f.name) ? Term::integer(std::stoll(f.name))
                                            : Term::compound(f.name));
    out.push_back(Term::rho());
    long long fresh_int = 1;
    while (rules_->signature().count(FnSym{std::to_string(fresh_int), 0})) ++fresh_int;
    out.push_back(Term::integer(fresh_int));
    out.push_back(Term::floating(1.5));
    out.push_back(Term::str("s"));
    out.push_back(Term::fresh_atom());
    return out;
  }

  // Materialized pools for argument positions (small depths only).
  const std::vector<Term>& terms_exact(int d) {
    while (static_cast<int>(pools_.size()) < d) {
      int nd = static_cast<int>(pools_.size()) + 1;
      std::vector<Term> pool;
      if (nd == 1) {
        pool = leaf_terms();
      } else {
        for (const FnSym& f : compounds_) {
          std::vector<Term> args;
          pool_product(f, 0, nd - 1, false, args, pool);
        }
      }
      pools_.push_back(std::move(pool));
    }
    return pools_[d - 1];
  }

  void pool_product(const FnSym& f, int pos, int sub, bool hit, std::vector<Term>& args,
                    std::vector<Term>& out) {
    if (pos == f.arity) {
      if (hit) out.push_back(Term::compound(f.name, args));
      return;
    }
    for (int d = 1; d <= sub; ++d) {
      if (pos == f.arity - 1 && !hit && d != sub) continue;
      // Bound the materialized pools; the lazy path guards the real cap.
      if (out.size() > 200000) return;
      const std::vector<Term> pool = terms_exact(d);
      for (const Term& t : pool) {
        args.push_back(t);
        pool_product(f, pos + 1, sub, hit || d == sub, args, out);
        args.pop_back();
      }
    }
  }

  const RuleSet* rules_;
  std::uint64_t cap_;
  std::uint64_t attempts_ = 0;
  bool capped_ = false;
  std::vector<FnSym> leaves_, compounds_;
  std::vector<std::vector<Term>> pools_;
};

}  // namespace

std::optional<Term> enumerate_witness(const Type& r, const RuleSet& rules, int max_depth,
                                      std::uint64_t attempt_cap, bool* capped) {
  TermEnumerator en(rules, attempt_cap);
  std::optional<Term> found;
  en.run(max_depth, [&](const Term& t) { return ext_member(t, r, rules); }, found);
  if (capped) *capped = en.capped();
  return found;
}

}  // namespace tyra
