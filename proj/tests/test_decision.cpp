#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "tyra/decision.hpp"

using namespace tyra;
using test::parse_term_text;
using test::ty;

namespace {
const RuleSet& rules() {
  static RuleSet r = test::peano_rules();
  return r;
}
Type T(const std::string& s) { return ty(s, rules()); }
}  // namespace

TEST_CASE("push_complement: dimension one") {
  SeqExpr e = SeqExpr::not_(SeqExpr::seq({T("nat")}));
  SeqExpr p = push_complement(e);
  REQUIRE(p.kind == SeqExpr::Kind::Seq);
  REQUIRE(p.items.size() == 1);
  CHECK(p.items[0] == Type::not_(T("nat")));
}

TEST_CASE("push_complement: sequence case produces one disjunct per position") {
  SeqExpr e = SeqExpr::not_(SeqExpr::seq({T("list(even) or list(odd)"), T("list(nat)")}));
  SeqExpr p = push_complement(e);
  REQUIRE(p.kind == SeqExpr::Kind::Or);
  REQUIRE(p.kids.size() == 2);
  CHECK(p.kids[0].items[0] == Type::not_(T("list(even) or list(odd)")));
  CHECK(p.kids[0].items[1] == Type::one());
  CHECK(p.kids[1].items[0] == Type::one());
  CHECK(p.kids[1].items[1] == Type::not_(T("list(nat)")));
}

TEST_CASE("push_complement: De Morgan over and") {
  SeqExpr s1 = SeqExpr::seq({T("nat")});
  SeqExpr s2 = SeqExpr::seq({T("even")});
  SeqExpr p = push_complement(SeqExpr::not_(SeqExpr::and_({s1, s2})));
  REQUIRE(p.kind == SeqExpr::Kind::Or);
  REQUIRE(p.kids.size() == 2);
}

TEST_CASE("etype: basics") {
  DecisionEngine dec(rules());
  CHECK(dec.etype(Type::zero()));
  CHECK_FALSE(dec.etype(Type::one()));
  // nat and list(1) is empty.
  CHECK(dec.etype(T("nat and list(1)")));
  // list(nat) and ~list(nat) is empty.
  CHECK(dec.etype(Type::and_raw(T("list(nat)"), Type::not_(T("list(nat)")))));
  // ~list(1) has the witness rho.
  CHECK_FALSE(dec.etype(Type::not_(T("list(1)"))));
  CHECK_FALSE(dec.etype(T("nat")));
  CHECK(dec.etype(T("nat and even and odd")));
  CHECK_FALSE(dec.etype(T("nat and even")));
  CHECK_FALSE(dec.etype(T("list(even) and list(odd)")));  // [] inhabits both
}

TEST_CASE("etype: recursive intersections") {
  DecisionEngine dec(rules());
  CHECK(dec.etype(T("odd and even")));
  // [] inhabits every list type, so the element type alone cannot empty it;
  // excluding [] does.
  CHECK_FALSE(dec.etype(T("list(odd and even) and (list(even) and list(odd))")));
  CHECK(dec.etype(Type::and_raw(T("list(odd and even)"), Type::not_(T("list(0)")))));
  CHECK(dec.etype(T("list(odd and even) and tree(1)")));
  // list over an empty element type still contains [].
  CHECK_FALSE(dec.etype(T("list(odd and even)")));
  CHECK_FALSE(dec.etype(T("tree(0)")));
  // integer intersects number but not atom.
  CHECK_FALSE(dec.etype(T("integer and number")));
  CHECK(dec.etype(T("integer and atom")));
  CHECK_FALSE(dec.etype(T("integer and nat")));  // the integer 0 inhabits both
  CHECK_FALSE(dec.etype(T("atomic and atom")));
  CHECK(dec.etype(T("string and atomic")));
}

TEST_CASE("etype: complements of built-in classes") {
  DecisionEngine dec(rules());
  // The atom reservoir survives finitely many negations of structures.
  CHECK_FALSE(dec.etype(Type::and_raw(T("atom"), Type::not_(T("list(1)")))));
  CHECK_FALSE(dec.etype(Type::and_raw(T("atom"), Type::not_(T("integer")))));
  CHECK(dec.etype(Type::and_raw(T("atom"), Type::not_(T("atom")))));
  CHECK(dec.etype(Type::and_raw(T("integer"), Type::not_(T("number")))));
  // [] is an atom that is also a list.
  CHECK_FALSE(dec.etype(T("atom and list(0)")));
  CHECK(dec.etype(T("atom and nat")));
}

TEST_CASE("includes: inclusion goldens") {
  DecisionEngine dec(rules());
  CHECK(dec.includes(T("nat"), T("even")));
  CHECK(dec.includes(T("list(nat)"), T("list(even)")));
  CHECK(dec.includes(T("list(nat)"), T("list(even) or list(odd)")));
  CHECK_FALSE(dec.includes(T("list(even) or list(odd)"), T("list(nat)")));
  CHECK(dec.includes(T("nat"), T("nat")));
  CHECK(dec.includes(T("number"), T("integer")));
  CHECK(dec.includes(T("atomic"), T("number")));
  CHECK_FALSE(dec.includes(T("atomic"), T("string")));
  CHECK(dec.includes(T("nat"), T("even or odd")));
  CHECK(dec.includes(T("even or odd"), T("nat")));  // every nat is even or odd
}

TEST_CASE("includes is transitive on samples") {
  DecisionEngine dec(rules());
  test::Gen gen(rules(), 43);
  int triples = 0;
  for (int i = 0; i < 300; ++i) {
    Type a = gen.type(4);
    Type b = gen.type(4);
    Type c = gen.type(4);
    if (dec.includes(a, b) && dec.includes(b, c)) {
      triples++;
      CHECK(dec.includes(a, c));
    }
  }
  CHECK(triples > 10);
}

TEST_CASE("vtset_leq and vtset_equiv: the even/odd union example") {
  DecisionEngine dec(rules());
  VtSet s1 = test::vtset({{{"x", "list(even)"}, {"y", "list(nat)"}},
                          {{"x", "list(odd)"}, {"y", "list(nat)"}}},
                         rules());
  VtSet s2 = test::vtset({{{"x", "list(even) or list(odd)"}, {"y", "list(nat)"}}}, rules());
  CHECK(dec.vtset_leq(s1, s2));
  CHECK(dec.vtset_leq(s2, s1));
  CHECK(dec.vtset_equiv(s1, s2));
  CHECK(dec.vtset_leq(VtSet{}, s1));
  CHECK_FALSE(dec.vtset_leq(test::vtset({{{"x", "list(nat)"}}}, rules()),
                            test::vtset({{{"x", "list(even)"}}}, rules())));
}

TEST_CASE("remove_redundant: subsumption example") {
  DecisionEngine dec(rules());
  VtSet s = test::vtset({{{"x", "list(even)"}, {"y", "list(nat)"}},
                         {{"x", "list(odd)"}, {"y", "list(nat)"}},
                         {{"x", "list(nat)"}, {"y", "list(nat)"}}},
                        rules());
  VtSet expect = test::vtset({{{"x", "list(nat)"}, {"y", "list(nat)"}}}, rules());
  VtSet got = dec.remove_redundant(s);
  CHECK(got == expect);
  CHECK(dec.vtset_equiv(got, s));
  CHECK(dec.remove_redundant(VtSet{}).empty());
  VtSet dup = test::vtset({{{"x", "nat"}}, {{"x", "nat"}}}, rules());
  CHECK(dec.remove_redundant(dup).size() == 1);
  // Typings with an empty entry are dropped.
  VtSet dead = test::vtset({{{"x", "nat and list(1)"}}}, rules());
  CHECK(dec.remove_redundant(dead).empty());
}

TEST_CASE("remove_redundant leaves no redundant element") {
  DecisionEngine dec(rules());
  test::Gen gen(rules(), 47);
  for (int i = 0; i < 40; ++i) {
    VtSet s;
    int n = 1 + gen.pick(3);
    for (int j = 0; j < n; ++j) {
      VariableTyping mu;
      mu.set("x", gen.type(3));
      if (gen.chance(0.5)) mu.set("y", gen.type(2));
      s.insert(std::move(mu));
    }
    VtSet r = dec.remove_redundant(s);
    CHECK(dec.vtset_equiv(r, s));
    for (size_t j = 0; j < r.size(); ++j) {
      VtSet rest;
      for (size_t k = 0; k < r.size(); ++k)
        if (k != j) rest.insert(r.typings()[k]);
      if (!rest.empty()) CHECK_FALSE(dec.vtset_leq(VtSet::singleton(r.typings()[j]), rest));
    }
  }
}

TEST_CASE("tabling: second identical query is a hit") {
  DecisionEngine dec(rules());
  Type probe = T("list(even) and list(odd) and list(nat)");
  dec.etype(probe);
  auto before = dec.stats();
  dec.etype(probe);
  auto after = dec.stats();
  CHECK(after.hits == before.hits + 1);
  CHECK(after.computations == before.computations);
  CHECK(after.total_checks == before.total_checks + 1);
  CHECK(after.hits + after.misses == after.total_checks);
}

TEST_CASE("tabling: canonically equal keys share one computation") {
  DecisionEngine dec(rules());
  dec.etype(T("(nat or even) and odd"));
  auto before = dec.stats();
  // Same canonical form, different surface syntax.
  dec.etype(T("odd and (even or nat)"));
  auto after = dec.stats();
  CHECK(after.hits == before.hits + 1);
  CHECK(after.computations == before.computations);
  CHECK(after.distinct_checks == before.distinct_checks);
}

TEST_CASE("no-tabling recomputes but agrees") {
  DecisionEngine with(rules(), true);
  DecisionEngine without(rules(), false);
  test::Gen gen(rules(), 53);
  for (int i = 0; i < 150; ++i) {
    Type r = gen.ext_type(5);
    CHECK(with.etype(r) == without.etype(r));
  }
  CHECK(without.stats().hits == 0);
  CHECK(without.stats().misses == without.stats().total_checks);
}

TEST_CASE("enumerate_witness: smallest members") {
  auto w = enumerate_witness(T("nat"), rules(), 2);
  REQUIRE(w);
  CHECK(*w == Term::integer(0));
  CHECK_FALSE(enumerate_witness(Type::zero(), rules(), 3));
  auto rho = enumerate_witness(Type::not_(T("list(1)")), rules(), 2);
  REQUIRE(rho);

  // With overloaded nil, nil is of type and(list(0), tree(0)).
  RuleSet nil = test::overloaded_nil_rules();
  auto both = enumerate_witness(ty("list(0) and tree(0)", nil), nil, 2);
  REQUIRE(both);
  CHECK(*both == parse_term_text("nil"));
}

TEST_CASE("ext_member agrees with member through the ground encoding") {
  test::Gen gen(rules(), 59);
  std::vector<std::string> vars = {"X", "Y"};
  for (int i = 0; i < 500; ++i) {
    Term t = gen.term(3, vars);
    Type r = gen.type(5);
    CHECK(member(t, r, rules()) == ext_member(ground_encode(t), r, rules()));
  }
}
