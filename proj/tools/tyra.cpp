#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tyra/builtins.hpp"
#include "tyra/engine.hpp"
#include "tyra/parser.hpp"
#include "tyra/propagation.hpp"
#include "tyra/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tyra::ParseError("cannot read file " + path, 0, 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tyra - goal-dependent type analysis for Prolog programs"};
  std::string rules_path, program_path, input_text, format = "text";
  int k0 = 1;
  bool no_tabling = false, show_stats = false, simplified = false;
  app.add_option("--rules", rules_path, "type-rule file")->required();
  app.add_option("--input", input_text,
                 "typing of the query variables, e.g. \"X:list(atom or float)\"");
  app.add_option("--k0", k0, "widening depth slack")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-tabling", no_tabling, "disable memoization of emptiness checks");
  app.add_flag("--stats", show_stats, "print emptiness-check statistics");
  app.add_flag("--simplified", simplified,
               "simplified analysis: no or/and types, one typing per point");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("program", program_path, "program file")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    tyra::RuleSet rules = tyra::parse_rules(read_file(rules_path));
    tyra::Program program = tyra::parse_program(read_file(program_path));
    tyra::bind_program(program, rules);
    tyra::Cfg cfg = tyra::build_cfg(program);
    tyra::DecisionEngine dec(rules, !no_tabling);
    tyra::VtSet input = input_text.empty()
                            ? tyra::id_abstract()
                            : tyra::parse_input_typing(input_text, rules, program);
    tyra::AnalysisConfig config;
    config.k0 = k0;
    config.simplified = simplified;
    tyra::AnalysisState state = tyra::analyze(program, cfg, input, rules, dec, config);
    tyra::AnalysisStats st = tyra::stats(state, dec);
    tyra::ReportConfig rc;
    rc.rules_file = rules_path;
    rc.program_file = program_path;
    rc.input = input_text;
    rc.k0 = k0;
    rc.tabling = !no_tabling;
    rc.simplified = simplified;
    if (format == "json") {
      std::cout << tyra::render_json(program, cfg, state, st, rc);
    } else {
      std::cout << tyra::render_text(program, cfg, state, st, rc, show_stats);
    }
    return 0;
  } catch (const tyra::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const tyra::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
