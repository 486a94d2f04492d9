#include <doctest.h>

#include "cycdt/print.hpp"
#include "cycdt/rewrite.hpp"
#include "gen.hpp"

using namespace cyc;
using test::lab;

namespace {

Term T(const std::string& s, const TypeName& ty) { return lab().term(s, TypeSeq{ty}); }

std::string numeral(int n) {
  std::string s = "0";
  for (int i = 0; i < n; ++i) s = "S(" + s + ")";
  return s;
}

}  // namespace

TEST_CASE("single steps") {
  RuleSet foldr = RuleSet::foldr(lab().sig);
  auto s = step(T("(y. S(y)) @ 0", "CNat"), foldr);
  REQUIRE(s);
  CHECK(s->rule->name == "7r");
  CHECK(print(s->after) == "S(0)");

  // fold over a cycle steps at the root although the body has a redex too
  Term t = T("sum(cy(x. plus(1, 1) :: x))", "CNat");
  auto first = step(t, foldr);
  REQUIRE(first);
  CHECK(first->rule->name == "4r");
  CHECK(first->position.empty());
  bool deeper = false;
  for (auto& st : all_steps(t, foldr)) deeper |= !st.position.empty();
  CHECK(deeper);
  CHECK_FALSE(step(T("cy(x. S(x))", "CNat"), foldr));
}

TEST_CASE("normalisation examples") {
  Program p = load_file(test::corpus("sum.cyc"));
  RuleSet all = RuleSet::foldr_simp(p.sig);
  CHECK(alpha_eq(normal_form(p.term("sum(cy(x. S(S(0)) :: S(0) :: x))"), all), p.term("cy(x. S(S(S(x))))")));
  Program c = load_file(test::corpus("ctail.cyc"));
  CHECK(alpha_eq(normal_form(c.term("ctail(cy(x. 1 :: 2 :: x))"), RuleSet::foldr_simp(c.sig)),
                 c.term("2 :: cy(y. 1 :: 2 :: y)")));
  CHECK(alpha_eq(normal_form(c.term("ctail(3 :: [])"), RuleSet::foldr_simp(c.sig)), c.term("[]")));
}

TEST_CASE("addition on finite numerals") {
  RuleSet foldr = RuleSet::foldr(lab().sig);
  for (int n = 0; n < 6; ++n)
    for (int m = 0; m < 6; ++m) {
      Term r = normal_form(T("plus(" + numeral(n) + ", " + numeral(m) + ")", "CNat"), foldr);
      CHECK(print(r) == numeral(n + m));
    }
}

TEST_CASE("value recognition") {
  CHECK(is_value(T("cy(x. S(x))", "CNat")));
  CHECK(is_value(T("pi1(cy(x : CList. y : CList. <0 :: y, x>))", "CList")));
  CHECK(is_value(lab().term("<0, []>")));
  CHECK_FALSE(is_value(T("sum([])", "CNat")));
  CHECK_FALSE(is_value(T("S(plus(0, 0))", "CNat")));
}

TEST_CASE("bad terms") {
  Program p = load_file(test::corpus("badterm.cyc"));
  RuleSet foldr = RuleSet::foldr(p.sig);
  CHECK(is_bad(p.term("cy(z. 1 :: mapinc(z))"), foldr));
  CHECK_FALSE(in_T(p.term("cy(z. 1 :: mapinc(z))"), foldr));
  // the right-hand side produced by the cycle rule keeps the cycle variable in parameter position only
  Term t = p.term("mapinc(cy(x. 1 :: x))");
  auto s = step(t, foldr);
  REQUIRE(s);
  REQUIRE(s->rule->name == "4r");
  CHECK_FALSE(is_bad(s->after, foldr));
  CHECK_FALSE(bad_subterm(s->after));
  CHECK(in_T(s->after, foldr));

  test::Gen g(51);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(is_bad(T(g.value("CList", 4), "CList"), foldr));
}

TEST_CASE("good-term membership") {
  Program p = load_file(test::corpus("sum.cyc"));
  RuleSet foldr = RuleSet::foldr(p.sig);
  CHECK(in_T(p.term("sum(cy(x. 2 :: 1 :: x))"), foldr));
  TCheck open = check_T(p.term("plus(0, y)", std::nullopt, {{"y", "CNat"}}), foldr);
  CHECK_FALSE(open.ok);
  CHECK(open.reason == "open-fold");
  // structure terms may mention variables bound inside the term, as inlined helpers do
  CHECK(check_T(p.term("cy(y. plus(0, y))"), foldr).ok);
  CHECK(check_T(p.term("sum(1 :: [])"), foldr).ok);
}

TEST_CASE("composition over a two-binder cycle blocks FOLDr but not SIMP") {
  Term t = T("mapinc(pi1(cy(x : CList. y : CList. <1 :: y, 2 :: x>)))", "CList");
  Term nf = normal_form(t, RuleSet::foldr(lab().sig));
  CHECK_FALSE(is_value(nf));
  Term nf2 = normal_form(t, RuleSet::foldr_simp(lab().sig));
  CHECK(is_value(nf2));
  CHECK(eq_mod_bisim(nf2, T("cy(x. 2 :: 3 :: x)", "CList"), *lab().sig));
}

TEST_CASE("fold of a closed value normalises to a value") {
  RuleSet foldr = RuleSet::foldr(lab().sig);
  test::Gen g(52);
  g.compositions = false;
  for (int i = 0; i < 300; ++i) {
    std::string v = g.value(i % 2 ? "CList" : "CTree", 4);
    std::string t = i % 2 ? (i % 4 == 1 ? "sum(" : "ctail(") + v + ")" : (i % 4 == 0 ? "mirror(" : "isEmpty(") + v + ")";
    Term nf = normal_form(lab().term(t), foldr);
    CAPTURE(t);
    CHECK(is_value(nf));
  }
}

TEST_CASE("normalisation terminates within the default budget") {
  RuleSet all = RuleSet::foldr_simp(lab().sig);
  test::Gen g(53);
  static const char* types[] = {"CNat", "CList", "CTree", "Bool"};
  for (int i = 0; i < 10000; ++i) {
    TypeName ty = types[i % 4];
    Term t = T(g.term(ty, 4, false), ty);
    Trace tr = normalize(t, all, default_fuel(), false);
    CHECK(tr.count < default_fuel());
    CHECK_FALSE(step(tr.final, all));
  }
  for (auto f : {"sum.cyc", "eq12.cyc", "tree.cyc", "ctail.cyc", "strings.cyc", "friends.cyc", "badterm.cyc"}) {
    Program p = load_file(test::corpus(f));
    for (auto& d : p.directives) CHECK_NOTHROW(normal_form(d.lhs, RuleSet::foldr_simp(p.sig)));
  }
}

TEST_CASE("FOLDr normal forms do not depend on the strategy") {
  RuleSet foldr = RuleSet::foldr(lab().sig);
  test::Gen g(54);
  for (int i = 0; i < 100; ++i) {
    TypeName ty = i % 2 ? "CNat" : "CList";
    Term t = T(g.term(ty, 4, false), ty);
    Term nf = normal_form(t, foldr);
    for (int k = 0; k < 20; ++k) {
      std::mt19937_64 rng(1000 * i + k);
      Trace tr = normalize_with(
          t, [&](const Term& u) { return random_step(u, foldr, rng); }, default_fuel(), false);
      CHECK(alpha_eq(tr.final, nf));
    }
  }
}

TEST_CASE("fuel exhaustion is reported") {
  RuleSet foldr = RuleSet::foldr(lab().sig);
  CHECK_THROWS_AS(normalize(T("sum(cy(x. 1 :: x))", "CNat"), foldr, 1), FuelExhausted);
}
