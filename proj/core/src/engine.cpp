#include "tyra/engine.hpp"

#include <algorithm>
#include <deque>

#include "tyra/builtins.hpp"
#include "tyra/propagation.hpp"

namespace tyra {

namespace {

int max_type_depth(const VtSet& s) {
  int d = 0;
  for (const auto& mu : s)
    for (const auto& [v, t] : mu.entries()) d = std::max(d, atom_depth_max(t));
  return d;
}

}  // namespace

VtSet widen(int point, const VtSet& s, AnalysisState& state, int k0) {
  if (s.empty()) return s;
  if (state.widen_depth[point] == 0)
    state.widen_depth[point] = max_type_depth(s) + k0;
  int k = state.widen_depth[point];
  if (k < 1) k = 1;
  VtSet out;
  for (const auto& mu : s) {
    VariableTyping w;
    for (const auto& [v, t] : mu.entries())
      w.set(v, canonicalize(depth_abstract(canonicalize(t), k)));
    out.insert(std::move(w));
  }
  return out;
}

Type simplify_type(const Type& r, DecisionEngine& dec) {
  switch (r.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
    case Type::Kind::Prim:
      return r;
    case Type::Kind::Not:
      throw DomainError("simplify_type: complement in type expression");
    case Type::Kind::Con: {
      std::vector<Type> args;
      for (const Type& a : r.args()) args.push_back(simplify_type(a, dec));
      return Type::con(r.ctor(), std::move(args));
    }
    case Type::Kind::And: {
      Type a = simplify_type(r.args()[0], dec);
      Type b = simplify_type(r.args()[1], dec);
      // Either operand bounds the intersection; prefer the smaller one.
      if (dec.includes(a, b)) return b;
      return a;
    }
    case Type::Kind::Or:
      break;
  }
  Type a = simplify_type(r.args()[0], dec);
  Type b = simplify_type(r.args()[1], dec);
  if (dec.includes(a, b)) return a;
  if (dec.includes(b, a)) return b;
  if (a.kind() == Type::Kind::Con && b.kind() == Type::Kind::Con && a.ctor() == b.ctor()) {
    std::vector<Type> args;
    for (size_t i = 0; i < a.args().size(); ++i) {
      Type lub = simplify_type(Type::or_raw(a.args()[i], b.args()[i]), dec);
      args.push_back(lub);
    }
    return Type::con(a.ctor(), std::move(args));
  }
  Type number = Type::prim(PrimClass::Number);
  if (dec.includes(number, a) && dec.includes(number, b)) return number;
  return Type::one();
}

VtSet simplify_vtset(const VtSet& s, DecisionEngine& dec) {
  if (s.empty()) return s;
  VariableTyping merged;
  bool first = true;
  for (const auto& mu : s) {
    VariableTyping simp;
    for (const auto& [v, t] : mu.entries()) simp.set(v, simplify_type(t, dec));
    if (first) {
      merged = simp;
      first = false;
      continue;
    }
    // Pointwise upper bound; a variable absent on either side reads 1.
    VariableTyping next;
    for (const auto& [v, t] : merged.entries()) {
      if (!simp.has(v)) continue;
      next.set(v, simplify_type(Type::or_raw(t, simp.at(v)), dec));
    }
    merged = std::move(next);
  }
  return VtSet::singleton(std::move(merged));
}

namespace {

struct Solver {
  const Program& prog;
  const Cfg& cfg;
  const RuleSet& rules;
  DecisionEngine& dec;
  const AnalysisConfig& config;
  AnalysisState& state;

  VtSet eval_rhs(int q) {
    switch (cfg.kind[q]) {
      case PointKind::Initial:
        return state.assignment[q];
      case PointKind::Nf:
        return state.assignment[cfg.predecessor[q]];
      case PointKind::Bip: {
        int p = cfg.predecessor[q];
        return builtin_transfer(cfg.atom_at(p, prog), state.assignment[p], rules, dec);
      }
      case PointKind::Call: {
        VtSet acc;
        auto it = cfg.edges_in.find(q);
        if (it == cfg.edges_in.end()) return acc;
        for (int p : it->second) {
          VtSet piece = aunify(cfg.atom_at(p, prog), state.assignment[p],
                               cfg.head_at(q, prog), id_abstract(), rules, dec);
          acc = join(acc, piece, dec);
        }
        return acc;
      }
      case PointKind::Ret: {
        VtSet acc;
        auto it = cfg.edges_in.find(q);
        if (it == cfg.edges_in.end()) return acc;
        int site = cfg.predecessor[q];
        for (int p : it->second) {
          VtSet piece = aunify(cfg.head_at(p, prog), state.assignment[p],
                               cfg.atom_at(site, prog), state.assignment[site], rules, dec);
          acc = join(acc, piece, dec);
        }
        return acc;
      }
    }
    return VtSet{};
  }
};

}  // namespace

AnalysisState analyze(const Program& p, const Cfg& cfg, const VtSet& input,
                      const RuleSet& rules, DecisionEngine& dec,
                      const AnalysisConfig& config) {
  AnalysisState state;
  state.assignment.assign(cfg.n_points + 1, VtSet{});
  state.widen_depth.assign(cfg.n_points + 1, 0);
  state.assignment[cfg.initial] =
      config.simplified ? simplify_vtset(input, dec) : input;

  // Dependents: q must be re-evaluated when any point its equation reads
  // changes. Ret equations read the call site as well as the edge sources.
  std::map<int, std::vector<int>> dependents;
  for (int q = 1; q <= cfg.n_points; ++q) {
    std::vector<int> reads;
    switch (cfg.kind[q]) {
      case PointKind::Initial:
        break;
      case PointKind::Nf:
      case PointKind::Bip:
        reads.push_back(cfg.predecessor[q]);
        break;
      case PointKind::Ret:
        reads.push_back(cfg.predecessor[q]);
        [[fallthrough]];
      case PointKind::Call: {
        auto it = cfg.edges_in.find(q);
        if (it != cfg.edges_in.end())
          for (int pnt : it->second) reads.push_back(pnt);
        break;
      }
    }
    for (int r : reads) dependents[r].push_back(q);
  }
  for (auto& [r, qs] : dependents) {
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  }

  Solver solver{p, cfg, rules, dec, config, state};
  std::deque<int> worklist;
  std::vector<bool> queued(cfg.n_points + 1, false);
  auto enqueue = [&](int q) {
    if (!queued[q] && cfg.kind[q] != PointKind::Initial) {
      queued[q] = true;
      worklist.push_back(q);
    }
  };
  for (int q : dependents[cfg.initial]) enqueue(q);

  constexpr std::uint64_t kIterationCap = 1000000;
  while (!worklist.empty()) {
    int q = worklist.front();
    worklist.pop_front();
    queued[q] = false;
    if (++state.iterations > kIterationCap)
      throw DomainError("analysis iteration cap exceeded");
    VtSet rhs = solver.eval_rhs(q);
    if (config.simplified) rhs = simplify_vtset(rhs, dec);
    VtSet widened = widen(q, rhs, state, config.k0);
    if (dec.vtset_leq(widened, state.assignment[q])) continue;
    state.assignment[q] = join(state.assignment[q], widened, dec);
    state.updates++;
    auto it = dependents.find(q);
    if (it != dependents.end())
      for (int d : it->second) enqueue(d);
  }
  return state;
}

AnalysisStats stats(const AnalysisState& state, const DecisionEngine& dec) {
  AnalysisStats out;
  const EmptinessStats& es = dec.stats();
  out.total_checks = es.total_checks;
  out.distinct_checks = es.distinct_checks;
  out.repetition = es.repetition();
  out.computations = es.computations;
  out.iterations = state.iterations;
  for (size_t q = 1; q < state.assignment.size(); ++q)
    out.point_sizes[static_cast<int>(q)] = state.assignment[q].size();
  return out;
}

}  // namespace tyra
