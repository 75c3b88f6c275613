#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tyra/cfg.hpp"
#include "tyra/decision.hpp"
#include "tyra/domain.hpp"
#include "tyra/program.hpp"

namespace tyra {

struct AnalysisConfig {
  int k0 = 1;             // widening depth slack
  bool simplified = false;  // or/and-free singleton-typing mode
};

/// The per-point assignment X♭ plus widening bookkeeping and counters.
struct AnalysisState {
  std::vector<VtSet> assignment;  // 1-based by program point
  std::vector<int> widen_depth;   // fixed per point on first non-empty update; 0 = unset
  std::uint64_t iterations = 0;   // point evaluations
  std::uint64_t updates = 0;      // strict increases

  const VtSet& at(int point) const { return assignment[point]; }
};

/// Replaces every type in S by cn(d_k(cn(R))) for the point's recorded depth,
/// fixing the depth on the first non-empty update.
VtSet widen(int point, const VtSet& s, AnalysisState& state, int k0);

/// Worklist solver for the dataflow equation system; terminates through
/// depth-k widening.
AnalysisState analyze(const Program& p, const Cfg& cfg, const VtSet& input,
                      const RuleSet& rules, DecisionEngine& dec,
                      const AnalysisConfig& config = {});

/// The report-record quantities: emptiness-check counters plus iteration and
/// per-point set sizes.
struct AnalysisStats {
  std::uint64_t total_checks = 0;
  std::uint64_t distinct_checks = 0;
  double repetition = 0.0;
  std::uint64_t computations = 0;
  std::uint64_t iterations = 0;
  std::map<int, std::size_t> point_sizes;
};

AnalysisStats stats(const AnalysisState& state, const DecisionEngine& dec);

/// The coarse upper-bound domain of the simplified analysis: or/and-free
/// types and at most one typing per point.
Type simplify_type(const Type& r, DecisionEngine& dec);
VtSet simplify_vtset(const VtSet& s, DecisionEngine& dec);

}  // namespace tyra
