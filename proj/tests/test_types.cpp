#include <doctest.h>

#include "testutil.hpp"
#include "tyra/types.hpp"

using namespace tyra;
using test::parse_term_text;
using test::ty;

namespace {
const RuleSet& rules() {
  static RuleSet r = test::peano_rules();
  return r;
}
}  // namespace

TEST_CASE("scheme application") {
  std::map<std::string, Type> kappa = {{"B1", ty("list(nat)", rules())},
                                       {"B2", ty("nat", rules())}};
  CHECK(scheme_apply(kappa, TypeScheme::ctor("list", {"B1"})) ==
        ty("list(list(nat))", rules()));
  // Parameters outside the domain default to 0.
  CHECK(scheme_apply({}, TypeScheme::ctor("list", {"B"})) == ty("list(0)", rules()));
  CHECK(scheme_apply({{"B", ty("even", rules())}}, TypeScheme::param("B")) ==
        ty("even", rules()));
}

TEST_CASE("member: nat denotation") {
  CHECK(member(parse_term_text("s(0)"), ty("nat", rules()), rules()));
  CHECK(member(parse_term_text("0"), ty("nat", rules()), rules()));
  CHECK(member(parse_term_text("s(s(0))"), ty("nat", rules()), rules()));
  CHECK_FALSE(member(Term::var("X"), ty("nat", rules()), rules()));
  CHECK(member(Term::var("X"), Type::one(), rules()));
  CHECK_FALSE(member(Term::var("X"), ty("list(1)", rules()), rules()));
}

TEST_CASE("member: list denotations") {
  // [[]] = { [] } for list(0); list(1) contains non-ground lists.
  CHECK(member(parse_term_text("[]"), ty("list(0)", rules()), rules()));
  CHECK_FALSE(member(parse_term_text("[0]"), ty("list(0)", rules()), rules()));
  CHECK(member(parse_term_text("[X]"), ty("list(1)", rules()), rules()));
  // [0,s(0)] distinguishes list(nat) from or(list(even),list(odd)).
  Term t = parse_term_text("[0,s(0)]");
  CHECK(member(t, ty("list(nat)", rules()), rules()));
  CHECK_FALSE(member(t, ty("list(even) or list(odd)", rules()), rules()));
}

TEST_CASE("member: built-in classes") {
  CHECK(member(Term::integer(3), ty("integer", rules()), rules()));
  CHECK(member(Term::integer(3), ty("number", rules()), rules()));
  CHECK(member(Term::integer(3), ty("atomic", rules()), rules()));
  CHECK_FALSE(member(Term::integer(3), ty("atom", rules()), rules()));
  CHECK(member(Term::floating(2.5), ty("float", rules()), rules()));
  CHECK_FALSE(member(Term::floating(2.5), ty("integer", rules()), rules()));
  CHECK(member(Term::str("s"), ty("string", rules()), rules()));
  CHECK_FALSE(member(Term::str("s"), ty("atomic", rules()), rules()));
  // Declared 0-ary symbols are atoms, including [].
  CHECK(member(parse_term_text("[]"), ty("atom", rules()), rules()));
  CHECK(member(parse_term_text("void"), ty("atomic", rules()), rules()));
  // Numeric rule heads are not atoms.
  CHECK_FALSE(member(parse_term_text("0"), ty("atom", rules()), rules()));
}

TEST_CASE("member: and/or are intersection/union") {
  test::Gen gen(rules(), 31);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term(3, {"X"});
    Type r1 = gen.type(3);
    Type r2 = gen.type(3);
    CHECK(member(t, Type::and_raw(r1, r2), rules()) ==
          (member(t, r1, rules()) && member(t, r2, rules())));
    CHECK(member(t, Type::or_raw(r1, r2), rules()) ==
          (member(t, r1, rules()) || member(t, r2, rules())));
  }
}

TEST_CASE("member: closure under instantiation") {
  test::Gen gen(rules(), 37);
  std::vector<std::string> vars = {"X", "Y"};
  int positives = 0;
  for (int i = 0; i < 3000 && positives < 200; ++i) {
    Term t = gen.term(3, vars);
    Type r = gen.type(4);
    if (!member(t, r, rules())) continue;
    positives++;
    Substitution sigma;
    for (const std::string& v : vars)
      if (gen.chance(0.8)) sigma.emplace(v, gen.term(2, {}));
    CHECK(member(apply_subst(sigma, t), r, rules()));
  }
  CHECK(positives >= 200);
}

TEST_CASE("member: unknown constructor is a domain error") {
  CHECK_THROWS_AS(member(parse_term_text("a"), Type::con("mystery"), rules()), DomainError);
}

TEST_CASE("dnf distributes and over or without simplification") {
  Type a = ty("nat", rules());
  Type b = ty("even", rules());
  Type c = ty("odd", rules());
  CHECK(dnf(Type::and_raw(Type::or_raw(a, b), c)) ==
        Type::or_raw(Type::and_raw(a, c), Type::and_raw(b, c)));
  CHECK(dnf(a) == a);
  Type dup = Type::or_raw(a, a);
  CHECK(dnf(dup) == dup);  // dnf does not deduplicate; cn does
}

TEST_CASE("canonicalize: compaction and idempotence") {
  // cn(tree(tree(list(1) or list(1)))) = tree(tree(list(1)))
  Type t = ty("tree(tree(list(1) or list(1)))", rules());
  CHECK(canonicalize(t) == ty("tree(tree(list(1)))", rules()));
  Type a = ty("nat", rules());
  CHECK(canonicalize(Type::and_raw(a, a)) == a);
  test::Gen gen(rules(), 41);
  for (int i = 0; i < 200; ++i) {
    Type r = gen.type(6);
    Type c = canonicalize(r);
    CHECK(canonicalize(c) == c);
  }
}

TEST_CASE("canonicalize orders by printed form") {
  Type r = ty("(list(nat) or nat) and odd", rules());
  Type s = ty("odd and (nat or list(nat))", rules());
  CHECK(canonicalize(r) == canonicalize(s));
}

TEST_CASE("atomic depth") {
  // In tree(tree(or(list(even), list(list(nat))))) the depth of list(even)
  // is 2 and of list(nat) 3.
  Type t = ty("tree(tree(list(even) or list(list(nat))))", rules());
  CHECK(atom_depth_max(t) == 4);  // nat sits at depth 4
  CHECK(atom_depth_max(ty("nat", rules())) == 0);
  CHECK(atom_depth_max(ty("nat or list(nat)", rules())) == 1);
  CHECK(atom_depth_max(ty("list(even)", rules())) == 1);
}

TEST_CASE("depth abstraction") {
  Type t = ty("tree(tree(list(even) or list(list(nat))))", rules());
  CHECK(depth_abstract(t, 2) == ty("tree(tree(list(1) or list(1)))", rules()));
  // d_k is the identity below the bound.
  Type small = ty("list(nat) or even", rules());
  CHECK(depth_abstract(small, 3) == small);
  // Atoms at the cut depth keep their name; only their arguments go to 1.
  CHECK(depth_abstract(ty("list(nat)", rules()), 1) == ty("list(nat)", rules()));
  CHECK(depth_abstract(ty("list(list(nat))", rules()), 1) == ty("list(list(1))", rules()));
  CHECK_THROWS_AS(depth_abstract(small, 0), DomainError);
}

TEST_CASE("rule set invariants") {
  CHECK_THROWS_AS(parse_rules("list(B,B) -> [].\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("list(B) -> [C|list(B)].\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("pair(B) -> p(q(list(B))).\n"), ParseError);
  // Schemes may appear in any argument position.
  RuleSet odd = parse_rules("list(B) -> [].\nlist(B) -> [list(B)|B].\n");
  CHECK(odd.rules().size() == 2);
}
