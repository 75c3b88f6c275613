#pragma once

#include <string>

#include "tyra/cfg.hpp"
#include "tyra/engine.hpp"
#include "tyra/program.hpp"

namespace tyra {

/// Configuration echoed into reports.
struct ReportConfig {
  std::string rules_file;
  std::string program_file;
  std::string input;  // raw --input text, empty for the all-One default
  int k0 = 1;
  bool tabling = true;
  bool simplified = false;
};

/// Per-point annotations rendered for people: one line per program point,
/// bindings written V/T, the all-One binding omitted, sets as lists.
std::string render_text(const Program& p, const Cfg& cfg, const AnalysisState& state,
                        const AnalysisStats& st, const ReportConfig& config,
                        bool with_stats);

/// Deterministic JSON report: config{}, points[], stats{}.
std::string render_json(const Program& p, const Cfg& cfg, const AnalysisState& state,
                        const AnalysisStats& st, const ReportConfig& config);

}  // namespace tyra
