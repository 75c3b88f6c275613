#include <benchmark/benchmark.h>

#include "tyra/builtins.hpp"
#include "tyra/engine.hpp"
#include "tyra/parser.hpp"
#include "tyra/propagation.hpp"

namespace {

const char* kPeanoRules = R"(
nat -> 0.
nat -> s(nat).
even -> 0.
even -> s(odd).
odd -> s(even).
list(B) -> [].
list(B) -> [B|list(B)].
tree(B) -> void.
tree(B) -> tr(B, tree(B), tree(B)).
)";

const char* kIntersect = R"(
intersect([], L, []).
intersect([X|Xs], Ys, [X|Zs]) :- member(X, Ys), intersect(Xs, Ys, Zs).
intersect([X|Xs], Ys, Zs) :- \+ member(X, Ys), intersect(Xs, Ys, Zs).
member(X, [X|L]).
member(X, [H|L]) :- member(X, L).
:- intersect(X, Y, Z).
)";

void bench_etype(benchmark::State& state) {
  tyra::RuleSet rules = tyra::parse_rules(kPeanoRules);
  bool tabling = state.range(0) != 0;
  tyra::Type probe = tyra::parse_type(
      "(list(even) or list(odd)) and list(nat) and tree(1)", rules);
  for (auto _ : state) {
    tyra::DecisionEngine dec(rules, tabling);
    bool empty = false;
    for (int i = 0; i < 50; ++i) empty = dec.etype(probe);
    benchmark::DoNotOptimize(empty);
  }
}
BENCHMARK(bench_etype)->Arg(0)->Arg(1);

void bench_vtset_equiv(benchmark::State& state) {
  tyra::RuleSet rules = tyra::parse_rules(kPeanoRules);
  tyra::DecisionEngine dec(rules, true);
  tyra::VariableTyping m1, m2, m3;
  m1.set("x", tyra::parse_type("list(even)", rules));
  m2.set("x", tyra::parse_type("list(odd)", rules));
  m3.set("x", tyra::parse_type("list(even) or list(odd)", rules));
  tyra::VtSet s1{{m1, m2}};
  tyra::VtSet s2 = tyra::VtSet::singleton(m3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dec.vtset_equiv(s1, s2));
  }
}
BENCHMARK(bench_vtset_equiv);

void bench_intersect_analysis(benchmark::State& state) {
  tyra::RuleSet rules = tyra::parse_rules("list(B) -> [].\nlist(B) -> [B|list(B)].\n");
  tyra::Program prog = tyra::parse_program(kIntersect);
  tyra::bind_program(prog, rules);
  tyra::Cfg cfg = tyra::build_cfg(prog);
  tyra::VtSet input = tyra::parse_input_typing(
      "X:list(atom or float), Y:list(atom or integer)", rules, prog);
  bool tabling = state.range(0) != 0;
  for (auto _ : state) {
    tyra::DecisionEngine dec(rules, tabling);
    tyra::AnalysisState st = tyra::analyze(prog, cfg, input, rules, dec);
    benchmark::DoNotOptimize(st.updates);
  }
}
BENCHMARK(bench_intersect_analysis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
