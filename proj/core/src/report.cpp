#include "tyra/report.hpp"

#include <json.hpp>
#include <sstream>

namespace tyra {

namespace {

bool is_infix_op(const std::string& name) {
  static const std::set<std::string> ops = {"=",  "==", "\\=", "\\==", "@<",  "@>",
                                            "@=<", "@>=", "<",   ">",    "=<",  ">=",
                                            "=:=", "=\\=", "is"};
  return ops.count(name) > 0;
}

// Term rendering with user-visible variable names and infix operators.
std::string term_display(const Term& t) {
  if (t.is_var()) return Program::display_var(t.name());
  if (!t.is_compound()) return t.to_string();
  if (t.arity() == 2 && is_infix_op(t.name()))
    return term_display(t.args()[0]) + " " + t.name() + " " + term_display(t.args()[1]);
  if (t.name() == "[|]" && t.arity() == 2) {
    std::string s = "[" + term_display(t.args()[0]);
    Term rest = t.args()[1];
    while (rest.is_compound() && rest.name() == "[|]" && rest.arity() == 2) {
      s += "," + term_display(rest.args()[0]);
      rest = rest.args()[1];
    }
    if (!(rest.is_compound() && rest.name() == "[]" && rest.arity() == 0))
      s += "|" + term_display(rest);
    return s + "]";
  }
  std::string s = t.name();
  if (t.arity() > 0) {
    s += "(";
    for (int i = 0; i < t.arity(); ++i) {
      if (i) s += ",";
      s += term_display(t.args()[i]);
    }
    s += ")";
  }
  return s;
}

std::string typing_display(const VariableTyping& mu) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, t] : mu.entries()) {
    if (!first) os << ", ";
    first = false;
    os << Program::display_var(v) << '/' << t.to_string();
  }
  os << '}';
  return os.str();
}

std::string vtset_display(const VtSet& s) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& mu : s) {
    if (!first) os << ", ";
    first = false;
    os << typing_display(mu);
  }
  os << ']';
  return os.str();
}

std::string point_place(const Program& p, const Cfg& cfg, int q) {
  int ci = cfg.clause_of[q];
  const Clause& c = p.clauses[ci];
  std::ostringstream os;
  if (ci == p.query_index) {
    os << "query";
  } else {
    os << "clause " << ci + 1 << " (" << c.head->name() << '/' << c.head->arity() << ')';
  }
  int li = cfg.literal_of[q];
  if (li >= 0) {
    const Literal& l = c.body[li];
    os << ", before " << (l.negated ? "\\+ " : "") << term_display(l.atom);
  } else {
    os << ", at exit";
  }
  return os.str();
}

std::pair<int, int> point_location(const Program& p, const Cfg& cfg, int q) {
  int ci = cfg.clause_of[q];
  const Clause& c = p.clauses[ci];
  int li = cfg.literal_of[q];
  if (li >= 0) return {c.body[li].line, c.body[li].col};
  if (!c.body.empty()) return {c.body.back().line, c.body.back().col};
  return {c.line, c.col};
}

}  // namespace

std::string render_text(const Program& p, const Cfg& cfg, const AnalysisState& state,
                        const AnalysisStats& st, const ReportConfig& config,
                        bool with_stats) {
  std::ostringstream os;
  for (int q = 1; q <= cfg.n_points; ++q) {
    os << "% point " << q << " [" << point_kind_name(cfg.kind[q]) << "] "
       << point_place(p, cfg, q) << "\n";
    os << "%   " << vtset_display(state.at(q)) << "\n";
  }
  if (with_stats) {
    os << "% stats: emptiness checks total=" << st.total_checks
       << " distinct=" << st.distinct_checks << " repetition=" << st.repetition
       << " computations=" << st.computations << " iterations=" << st.iterations << "\n";
  }
  return os.str();
}

std::string render_json(const Program& p, const Cfg& cfg, const AnalysisState& state,
                        const AnalysisStats& st, const ReportConfig& config) {
  nlohmann::ordered_json root;
  root["config"] = {{"rules", config.rules_file},
                    {"program", config.program_file},
                    {"input", config.input},
                    {"k0", config.k0},
                    {"tabling", config.tabling},
                    {"simplified", config.simplified}};
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (int q = 1; q <= cfg.n_points; ++q) {
    nlohmann::ordered_json pt;
    pt["id"] = q;
    pt["kind"] = point_kind_name(cfg.kind[q]);
    pt["clause"] = cfg.clause_of[q];
    pt["literal"] = cfg.literal_of[q];
    auto [line, col] = point_location(p, cfg, q);
    pt["line"] = line;
    pt["column"] = col;
    nlohmann::ordered_json typings = nlohmann::ordered_json::array();
    for (const auto& mu : state.at(q)) {
      nlohmann::ordered_json typing = nlohmann::ordered_json::object();
      for (const auto& [v, t] : mu.entries())
        typing[Program::display_var(v)] = t.to_string();
      typings.push_back(std::move(typing));
    }
    pt["typings"] = std::move(typings);
    points.push_back(std::move(pt));
  }
  root["points"] = std::move(points);
  nlohmann::ordered_json sizes = nlohmann::ordered_json::object();
  for (const auto& [q, n] : st.point_sizes) sizes[std::to_string(q)] = n;
  root["stats"] = {{"total_checks", st.total_checks},
                   {"distinct_checks", st.distinct_checks},
                   {"repetition", st.repetition},
                   {"computations", st.computations},
                   {"iterations", st.iterations},
                   {"point_sizes", std::move(sizes)}};
  return root.dump(2) + "\n";
}

}  // namespace tyra
