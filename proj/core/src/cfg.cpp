#include "tyra/cfg.hpp"

#include <algorithm>

#include "tyra/builtins.hpp"

namespace tyra {

const char* point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::Initial: return "initial";
    case PointKind::Call: return "call";
    case PointKind::Ret: return "ret";
    case PointKind::Nf: return "nf";
    case PointKind::Bip: return "bip";
  }
  return "?";
}

bool Cfg::is_clause_end(int p) const { return literal_of[p] < 0; }

const Term& Cfg::atom_at(int p, const Program& prog) const {
  int li = literal_of[p];
  if (li < 0) throw DomainError("no literal to the right of point " + std::to_string(p));
  return prog.clauses[clause_of[p]].body[li].atom;
}

const Term& Cfg::head_at(int p, const Program& prog) const {
  const Clause& c = prog.clauses[clause_of[p]];
  if (!c.head) throw DomainError("point " + std::to_string(p) + " belongs to the query");
  return *c.head;
}

Cfg build_cfg(const Program& p) {
  Cfg g;
  auto preds = p.predicates();

  // Allocate points in source order.
  g.kind.assign(1, PointKind::Initial);  // index 0 unused
  g.clause_of.assign(1, -1);
  g.literal_of.assign(1, -1);
  g.predecessor.assign(1, 0);
  for (size_t ci = 0; ci < p.clauses.size(); ++ci) {
    const Clause& c = p.clauses[ci];
    int first = static_cast<int>(g.kind.size());
    g.clause_first.push_back(first);
    for (size_t li = 0; li <= c.body.size(); ++li) {
      int point = static_cast<int>(g.kind.size());
      g.kind.push_back(PointKind::Call);  // refined below
      g.clause_of.push_back(static_cast<int>(ci));
      g.literal_of.push_back(li < c.body.size() ? static_cast<int>(li) : -1);
      g.predecessor.push_back(li == 0 ? 0 : point - 1);
    }
    g.clause_end.push_back(static_cast<int>(g.kind.size()) - 1);
  }
  g.n_points = static_cast<int>(g.kind.size()) - 1;
  g.initial = g.clause_first[p.query_index];

  // Kinds: the first point of a clause is reached by a call (the query's by
  // nothing); later points by the literal to their left.
  for (size_t ci = 0; ci < p.clauses.size(); ++ci) {
    const Clause& c = p.clauses[ci];
    int first = g.clause_first[ci];
    g.kind[first] =
        static_cast<int>(ci) == p.query_index ? PointKind::Initial : PointKind::Call;
    for (size_t li = 0; li < c.body.size(); ++li) {
      int after = first + static_cast<int>(li) + 1;
      const Literal& l = c.body[li];
      if (l.negated) {
        g.kind[after] = PointKind::Nf;
      } else if (is_builtin(l.atom.symbol())) {
        g.kind[after] = PointKind::Bip;
      } else {
        g.kind[after] = PointKind::Ret;
      }
    }
  }

  // Edges.
  for (size_t ci = 0; ci < p.clauses.size(); ++ci) {
    const Clause& c = p.clauses[ci];
    int first = g.clause_first[ci];
    for (size_t li = 0; li < c.body.size(); ++li) {
      int before = first + static_cast<int>(li);
      int after = before + 1;
      const Literal& l = c.body[li];
      FnSym pred = l.atom.symbol();
      bool builtin = is_builtin(pred);
      if (builtin && !l.negated) {
        g.edges_in[after].push_back(before);
        continue;
      }
      if (l.negated) {
        // Identity flow past the negation; data still flows into the callee.
        g.edges_in[after].push_back(before);
      }
      if (builtin) continue;
      auto it = preds.find(pred);
      if (it == preds.end())
        throw DomainError("call to undefined predicate " + pred.name + "/" +
                          std::to_string(pred.arity));
      for (int target : it->second)
        g.edges_in[g.clause_first[target]].push_back(before);
      if (!l.negated) {
        for (int target : it->second)
          g.edges_in[after].push_back(g.clause_end[target]);
      }
    }
  }
  for (auto& [q, sources] : g.edges_in) std::sort(sources.begin(), sources.end());
  return g;
}

}  // namespace tyra
