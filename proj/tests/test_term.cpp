#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "tyra/term.hpp"

using namespace tyra;
using test::parse_term_text;

TEST_CASE("mgu: single binding") {
  auto s = mgu(Term::var("X"), Term::compound("a"));
  REQUIRE(s);
  CHECK(apply_subst(*s, Term::var("X")) == Term::compound("a"));
}

TEST_CASE("mgu: clash fails") {
  CHECK_FALSE(mgu(Term::compound("a"), Term::compound("b")));
  CHECK_FALSE(mgu(parse_term_text("p(a)"), parse_term_text("p(b)")));
}

TEST_CASE("mgu: forced by idempotence") {
  // {x = f(y), y = a} -> {x -> f(a), y -> a}
  EquationSet e = {{Term::var("X"), parse_term_text("f(Y)")},
                   {Term::var("Y"), Term::compound("a")}};
  auto s = mgu(e);
  REQUIRE(s);
  CHECK(apply_subst(*s, Term::var("X")) == parse_term_text("f(a)"));
  CHECK(apply_subst(*s, Term::var("Y")) == Term::compound("a"));
}

TEST_CASE("mgu: occurs check") {
  CHECK_FALSE(mgu(Term::var("X"), parse_term_text("f(X)")));
}

TEST_CASE("mgu idempotence on random equation sets") {
  test::Gen gen(test::peano_rules(), 17);
  std::vector<std::string> vars = {"X", "Y", "Z"};
  int unifiable = 0;
  for (int i = 0; i < 300; ++i) {
    EquationSet e = {{Term::var(vars[gen.pick(3)]), gen.term(3, vars)},
                     {gen.term(2, vars), gen.term(2, vars)}};
    auto s = mgu(e);
    if (!s) continue;
    unifiable++;
    for (const std::string& v : vars) {
      Term once = apply_subst(*s, Term::var(v));
      CHECK(apply_subst(*s, once) == once);
    }
    for (const Equation& eq_ : e)
      CHECK(apply_subst(*s, eq_.lhs) == apply_subst(*s, eq_.rhs));
  }
  CHECK(unifiable > 20);
}

TEST_CASE("eq(theta) round trip") {
  Substitution theta = {{"X", Term::compound("a")}};
  EquationSet e = eq(theta);
  REQUIRE(e.size() == 1);
  CHECK(e[0].lhs == Term::var("X"));
  CHECK(e[0].rhs == Term::compound("a"));
  CHECK(eq(Substitution{}).empty());
  auto back = mgu(e);
  REQUIRE(back);
  CHECK(apply_subst(*back, Term::var("X")) == Term::compound("a"));
}

TEST_CASE("mgu(E1 u E2) == mgu(E1 u eq(mgu(E2))) up to renaming") {
  test::Gen gen(test::peano_rules(), 23);
  std::vector<std::string> vars = {"X", "Y", "Z", "W"};
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    EquationSet e1 = {{Term::var(vars[gen.pick(4)]), gen.term(3, vars)}};
    EquationSet e2 = {{Term::var(vars[gen.pick(4)]), gen.term(3, vars)}};
    auto m2 = mgu(e2);
    EquationSet all = e1;
    all.insert(all.end(), e2.begin(), e2.end());
    auto direct = mgu(all);
    if (!m2) {
      CHECK_FALSE(direct);
      continue;
    }
    EquationSet staged = e1;
    for (const Equation& q : eq(*m2)) staged.push_back(q);
    auto via = mgu(staged);
    REQUIRE(static_cast<bool>(direct) == static_cast<bool>(via));
    if (!direct) continue;
    checked++;
    // Equal up to renaming: the tuples of images must match as variants.
    std::vector<Term> lhs, rhs;
    for (const std::string& v : vars) {
      lhs.push_back(apply_subst(*direct, Term::var(v)));
      rhs.push_back(apply_subst(*via, Term::var(v)));
    }
    Term tl = Term::compound("t", lhs);
    Term tr = Term::compound("t", rhs);
    // Variants: each matches the other.
    CHECK(static_cast<bool>(test::match(tl, tr)));
    CHECK(static_cast<bool>(test::match(tr, tl)));
  }
  CHECK(checked > 30);
}

TEST_CASE("apply: identity and simultaneity") {
  Term t = parse_term_text("f(X,Y)");
  CHECK(apply_subst({}, t) == t);
  Substitution s = {{"X", Term::var("Y")}, {"Y", Term::compound("a")}};
  // Simultaneous: X -> Y, not X -> a.
  CHECK(apply_subst(s, t) == parse_term_text("f(Y,a)"));
  CHECK(apply_subst({{"X", parse_term_text("s(0)")}}, Term::var("X")) ==
        parse_term_text("s(0)"));
}

TEST_CASE("psi renaming is deterministic, injective, disjoint") {
  Term t = parse_term_text("f(X,Y)");
  Term r = psi_rename(t);
  CHECK(r == psi_rename(t));
  CHECK(r.vars() == std::set<std::string>{"X'", "Y'"});
  for (const std::string& v : r.vars()) CHECK(is_psi_var(v));
  CHECK_THROWS_AS(psi_rename(r), DomainError);
  CHECK(psi_var("X") != psi_var("Y"));
}

TEST_CASE("ground encoding") {
  CHECK(ground_encode(Term::var("X")) == Term::rho());
  CHECK(ground_encode(parse_term_text("f(X,a)")) ==
        Term::compound("f", {Term::rho(), Term::compound("a")}));
  CHECK(ground_encode(parse_term_text("[X|Y]")) ==
        Term::compound("[|]", {Term::rho(), Term::rho()}));
}

TEST_CASE("ground encoding is a homomorphism") {
  test::Gen gen(test::peano_rules(), 5);
  std::vector<std::string> vars = {"X", "Y"};
  for (int i = 0; i < 200; ++i) {
    Term t = gen.term(4, vars);
    if (!t.is_compound() || t.arity() == 0) continue;
    std::vector<Term> enc;
    for (const Term& a : t.args()) enc.push_back(ground_encode(a));
    CHECK(ground_encode(t) == Term::compound(t.name(), enc));
  }
}

TEST_CASE("term printing") {
  CHECK(parse_term_text("[a,b|T]").to_string() == "[a,b|T]");
  CHECK(parse_term_text("[1,2]").to_string() == "[1,2]");
  CHECK(Term::floating(2.5).to_string() == "2.5");
  CHECK(Term::str("hi").to_string() == "\"hi\"");
}
