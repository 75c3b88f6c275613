#pragma once

#include <map>
#include <vector>

#include "tyra/program.hpp"

namespace tyra {

/// How a program point is reached: the four control-flow varieties plus the
/// initial point of the query.
enum class PointKind { Initial, Call, Ret, Nf, Bip };

const char* point_kind_name(PointKind k);

/// The control-flow graph over textual program points. Points are numbered
/// from 1 in source order: each clause contributes one point before each
/// body literal plus one at the clause end.
struct Cfg {
  int n_points = 0;
  int initial = 0;
  std::vector<PointKind> kind;            // 1-based
  std::vector<int> clause_of;             // 1-based point -> clause index
  std::vector<int> literal_of;            // index of the literal to the right; body size at end
  std::vector<int> predecessor;           // p⁻, 0 if none
  std::map<int, std::vector<int>> edges_in;  // q -> sorted sources
  std::vector<int> clause_first;          // per clause
  std::vector<int> clause_end;            // per clause

  bool is_clause_end(int p) const;
  /// The atom of the literal to the right of p (for negated literals, the
  /// atom under the negation). Requires such a literal to exist.
  const Term& atom_at(int p, const Program& prog) const;
  /// The head of the clause p belongs to.
  const Term& head_at(int p, const Program& prog) const;
};

/// Builds the control-flow graph; throws DomainError on calls to undefined
/// predicates.
Cfg build_cfg(const Program& p);

}  // namespace tyra
