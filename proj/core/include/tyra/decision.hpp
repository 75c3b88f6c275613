#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tyra/domain.hpp"
#include "tyra/term.hpp"
#include "tyra/types.hpp"

namespace tyra {

/// Type sequence expressions: sequences of (possibly complemented) types of
/// one dimension, combined with and/or/~.
struct SeqExpr {
  enum class Kind { Seq, And, Or, Not };
  Kind kind = Kind::Seq;
  std::vector<Type> items;    // Seq
  std::vector<SeqExpr> kids;  // And/Or: n-ary, Not: exactly one

  static SeqExpr seq(std::vector<Type> items);
  static SeqExpr and_(std::vector<SeqExpr> kids);
  static SeqExpr or_(std::vector<SeqExpr> kids);
  static SeqExpr not_(SeqExpr e);

  int dimension() const;
  std::string to_string() const;
};

/// Eliminates the outer complement of a sequence expression: afterwards ~
/// applies only to type expressions, never to sequence expressions.
SeqExpr push_complement(const SeqExpr& e);

/// Memoized emptiness results keyed by canonical printed form, plus the
/// counters behind the repetition statistics.
struct EmptinessStats {
  std::uint64_t total_checks = 0;  // etype queries
  std::uint64_t hits = 0;          // answered from the table
  std::uint64_t misses = 0;        // total - hits
  std::uint64_t computations = 0;  // full decision-procedure runs
  std::uint64_t goal_explorations = 0;
  std::uint64_t distinct_checks = 0;
  double repetition() const {
    return distinct_checks ? static_cast<double>(total_checks) / distinct_checks : 0.0;
  }
};

/// Decides emptiness, inclusion and equivalence of types and vt-sets under
/// the ground-encoding semantics over Σ ∪ {ρ}.
///
/// Emptiness of a conjunctive goal is the least fixpoint of witness
/// existence: each candidate head (signature symbol, ρ, or a reservoir
/// representative per built-in class) is unfolded through the type rules and
/// the argument goals are decided recursively. A goal met again while in
/// progress contributes no witness on that path; completed strongly connected
/// components are committed to the table.
class DecisionEngine {
 public:
  explicit DecisionEngine(const RuleSet& rules, bool tabling = true);

  const RuleSet& rules() const { return *rules_; }
  bool tabling() const { return tabling_; }

  /// ⟦R⟧♮ = ∅? For complement-free R this coincides with ⟦R⟧ = ∅.
  bool etype(const Type& r);
  /// Emptiness of a type sequence expression.
  bool etype_seq(const SeqExpr& e);
  /// ⟦r2⟧ ⊆ ⟦r1⟧, via etype(r2 and ~r1).
  bool includes(const Type& r1, const Type& r2);
  bool equiv(const Type& r1, const Type& r2);

  /// Union-of-denotations inclusion of vt-sets, reduced to sequence
  /// emptiness over the mentioned variables.
  bool vtset_leq(const VtSet& s1, const VtSet& s2);
  bool vtset_equiv(const VtSet& s1, const VtSet& s2);

  /// Drops typings that denote ∅ and typings subsumed by the rest, scanning
  /// in ascending canonical key order.
  VtSet remove_redundant(const VtSet& s);

  /// Denotation-preserving compaction: canonical form with ≡0 and subsumed
  /// disjuncts removed, applied recursively to constructor arguments. Keeps
  /// the types flowing through the analysis small.
  Type compact(const Type& r);

  const EmptinessStats& stats() const { return stats_; }
  void reset_stats() { stats_ = EmptinessStats{}; }
  /// Distinct decision-procedure goals explored by the most recent
  /// non-cached etype computation (a witness-size bound).
  std::uint64_t last_goal_count() const { return last_goal_count_; }

 private:
  struct Goal {
    std::vector<Type> pos;  // sorted by printed form, unique
    std::vector<Type> neg;
    std::string key;
  };
  struct Work;

  std::vector<Goal> normalize(const Type& r) const;
  bool run_goals(const std::vector<Goal>& goals);  // true iff all empty
  bool goal_nonempty(const Goal& g, Work& w);
  bool explore(const Goal& g, Work& w);
  bool leaf_member(const Term& leaf, const Type& atom) const;
  bool leaf_viable(const Goal& g, const Term& leaf) const;
  bool compound_head_viable(const Goal& g, const FnSym& f, Work& w);
  bool position_nonempty(const Type& expr, Work& w);

  const RuleSet* rules_;
  bool tabling_;
  std::map<std::string, bool> table_;  // key -> "denotes the empty set"
  std::set<std::string> seen_keys_;
  EmptinessStats stats_;
  std::uint64_t last_goal_count_ = 0;
};

/// Exhaustively enumerates ground terms over Σ ∪ {ρ} (plus one reservoir
/// representative per built-in class) up to `max_depth` and returns the
/// first member of ⟦R⟧♮, if any. `capped` reports hitting the attempt cap.
std::optional<Term> enumerate_witness(const Type& r, const RuleSet& rules, int max_depth,
                                      std::uint64_t attempt_cap = 2000000,
                                      bool* capped = nullptr);

}  // namespace tyra
