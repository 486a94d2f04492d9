#include <doctest.h>

#include "cycdt/print.hpp"
#include "cycdt/prover.hpp"
#include "cycdt/surface.hpp"
#include "gen.hpp"

using namespace cyc;

namespace {

const char* kNat = R"(
ctype CNat where
  0 : CNat
  S : CNat -> CNat
with axioms AxCy
)";

const char* kStringTypes = R"(
ctype CString where
  a : CString -> CString
  b : CString -> CString
  eps : CString
  (|) : CString, CString -> CString
with axioms AxCy, AxBr(eps, |)

ctype ABool where
  true : ABool
  false : ABool
  (||) : ABool, ABool -> ABool
with axioms AxCy, AxBr(false, ||)

head-a? : CString -> ABool
fun head-a?(t) = fold (x. true, x. false, false, x. y. x || y) t
)";

std::string closed_string(test::Gen& g, int depth, std::vector<std::string>& scope) {
  if (depth <= 0 || g.coin(0.2)) {
    if (!scope.empty() && g.coin()) return scope[g.uniform(0, static_cast<int>(scope.size()) - 1)];
    return "eps";
  }
  switch (g.uniform(0, 4)) {
    case 0: return "a(" + closed_string(g, depth - 1, scope) + ")";
    case 1: return "b(" + closed_string(g, depth - 1, scope) + ")";
    case 2: return "(" + closed_string(g, depth - 1, scope) + " | " + closed_string(g, depth - 1, scope) + ")";
    default: {
      std::string x = "s" + std::to_string(scope.size());
      scope.push_back(x);
      std::string body = closed_string(g, depth - 1, scope);
      scope.pop_back();
      return "cy(" + x + " : CString. " + body + ")";
    }
  }
}

Term eval(const Program& p, const Term& t) { return normal_form(t, RuleSet::foldr_simp(p.sig)); }

}  // namespace

TEST_CASE("ctype block parses into constructors and axioms") {
  SourceFile f = parse(kNat);
  REQUIRE(f.ctypes.size() == 1);
  CHECK(f.ctypes[0].name == "CNat");
  REQUIRE(f.ctypes[0].ctors.size() == 2);
  CHECK(f.ctypes[0].ctors[0].name == "0");
  CHECK(f.ctypes[0].ctors[1].name == "S");
  CHECK(f.ctypes[0].ctors[1].args == std::vector<std::string>{"CNat"});
  CHECK_FALSE(f.ctypes[0].axbr);
}

TEST_CASE("empty source") {
  SourceFile f = parse("");
  CHECK(f.items.empty());
  Program p = load_program("");
  CHECK(p.sig->datatype_order().empty());
  CHECK(p.funs.empty());
}

TEST_CASE("declaration errors") {
  CHECK_THROWS_AS(load_program("ctype B where\n  u : B\nwith axioms AxCy, AxBr(u, m)\n"), SyntaxError);
  CHECK_THROWS_AS(parse(std::string(kNat) + kNat), SyntaxError);
  CHECK_THROWS_AS(load_program("ctype L where\n  c : Q -> L\nwith axioms AxCy\n"), Error);
  try {
    parse("ctype CNat where\n  0 : CNat\n  S : CNat ->\n");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.pos.line == 4);
  }
}

TEST_CASE("list signature") {
  Program p = load_file(test::corpus("sum.cyc"));
  const auto& l = p.sig->datatype("CList");
  REQUIRE(l.ctors.size() == 2);
  CHECK(l.ctors[0]->name == "[]");
  CHECK(l.ctors[0]->args.empty());
  CHECK(l.ctors[1]->name == "::");
  CHECK(l.ctors[1]->args == TypeSeq{"CNat", "CList"});
  CHECK_FALSE(l.has_axbr());
}

TEST_CASE("tree signature carries the branching axioms") {
  Program p = load_file(test::corpus("tree.cyc"));
  const auto& t = p.sig->datatype("CTree");
  CHECK(t.has_axbr());
  CHECK(t.br_unit->name == "nil");
  CHECK(t.br_branch->name == "+");
  CHECK(p.sig->datatype("Bool").br_unit->name == "true");
}

TEST_CASE("plain fold definition") {
  Program p = load_file(test::corpus("sum.cyc"));
  const FunInfo& plus = p.funs.at("plus");
  REQUIRE(is_fold(plus.body));
  CHECK(fold_cases(plus.body) == 2);
  CHECK(fold_params(plus.body) == 0);
  CHECK(alpha_eq(fold_structure(plus.body), fvar(plus.params[0], "CNat")));
  CHECK(alpha_eq(plus.body->args[0], fvar(plus.params[1], "CNat")));
  CHECK(print(plus.body->args[1]) == "x. S(x)");
}

TEST_CASE("paramorphisms project the first component of a pair-valued fold") {
  Program p = load_file(test::corpus("ctail.cyc"));
  const Term& body = p.funs.at("ctail").body;
  REQUIRE(is_app(body, SymKind::Comp));
  CHECK(abs_arity(body->args[0]) == 2);
  REQUIRE(is_fold(body->args[1]));
  CHECK(body->args[1]->sym->target == TypeSeq{"CList", "CList"});

  Program s = load_file(test::corpus("strings.cyc"));
  const FunInfo& aa = s.funs.at("aa?");
  CHECK(aa.kind == FunDef::PrimRec);
  REQUIRE(is_app(aa.body, SymKind::Comp));
  const Term& fold = aa.body->args[1];
  REQUIRE(is_fold(fold));
  CHECK(fold->sym->target == TypeSeq{"ABool", "CString"});
  CHECK(fold_cases(fold) == 4);
}

TEST_CASE("printing re-parses to an alpha-equal term on the corpus") {
  for (auto f : {"sum.cyc", "eq12.cyc", "badterm.cyc", "tree.cyc", "ctail.cyc", "strings.cyc", "friends.cyc",
                 "negatives.cyc"}) {
    Program p = load_file(test::corpus(f));
    std::vector<Term> terms;
    for (auto& d : p.directives) {
      if (d.lhs) terms.push_back(d.lhs);
      if (d.rhs) terms.push_back(d.rhs);
    }
    for (auto& t : terms) {
      std::string text = print(t, {.binder_types = true});
      CAPTURE(text);
      CHECK(alpha_eq(p.term(text, type_of(t)), t));
    }
  }
}

TEST_CASE("printing re-parses on random lab terms") {
  test::Gen g(21);
  for (int i = 0; i < 300; ++i) {
    TypeName ty = i % 2 ? "CList" : "CTree";
    Term t = test::lab().term(g.term(ty, 5, false), TypeSeq{ty});
    std::string text = print(t, {.binder_types = true});
    CAPTURE(text);
    CHECK(alpha_eq(test::lab().term(text, TypeSeq{ty}), t));
  }
}

TEST_CASE("primitive recursion satisfies its defining equations") {
  Program p = load_file(test::corpus("strings.cyc"));
  test::Gen g(22);
  for (int i = 0; i < 150; ++i) {
    std::vector<std::string> scope;
    std::string w = closed_string(g, 4, scope);
    CAPTURE(w);
    // aa?(a(w)) = head-a?(w) || aa?(w);  aa?(b(w)) = aa?(w)
    CHECK(eq_mod_bisim(eval(p, p.term("aa?(a(" + w + "))")), eval(p, p.term("head-a?(" + w + ") || aa?(" + w + ")")),
                       *p.sig));
    CHECK(eq_mod_bisim(eval(p, p.term("aa?(b(" + w + "))")), eval(p, p.term("aa?(" + w + ")")), *p.sig));
  }
}

TEST_CASE("aa? written with a single head test misses a pair spanning the cycle") {
  // the one-step recursion checks only the head at every a and never recurses
  Program p = load_program(std::string(kStringTypes) + R"(
fun aa? : CString -> ABool where
  aa?(a(t)) = head-a?(t)
  aa?(b(t)) = aa?(t)
)");
  auto run = [&](const std::string& s) { return print(eval(p, p.term(s))); };
  CHECK(run("aa?(b(cy(x. a(b(a(x))))))") == "false");
  CHECK(run("aa?(cy(x. a(x)))") == "true");
  Program fixed = load_file(test::corpus("strings.cyc"));
  CHECK(print(eval(fixed, fixed.term("aa?(b(cy(x. a(b(a(x))))))"))) == "true");
}

TEST_CASE("spec blocks are typechecked and hold as properties") {
  Program p = load_program(std::string(test::kLabSource) + R"(
spec sum
  sum([]) = 0
  sum(k :: t) = plus(k, sum(t))
)");
  REQUIRE(p.specs.size() == 2);
  CHECK(p.specs[0].ctor == "[]");
  CHECK(p.specs[1].ctor == "::");
  CHECK(p.specs[1].vars.at("k") == "CNat");
  CHECK(p.specs[1].vars.at("t") == "CList");
  test::Gen g(23);
  RuleSet foldr = RuleSet::foldr(p.sig);
  for (int i = 0; i < 100; ++i) {
    std::map<std::string, Term> inst{{"k", p.term(g.value("CNat", 3), TypeSeq{"CNat"})},
                                     {"t", p.term(g.value("CList", 3), TypeSeq{"CList"})}};
    for (auto& eq : p.specs) {
      ProofResult r = prove(subst_vars(eq.lhs, inst), subst_vars(eq.rhs, inst), foldr);
      CHECK(r.verdict == Verdict::Equal);
    }
  }
  CHECK_THROWS_AS(load_program(std::string(test::kLabSource) + "spec sum\n  sum(k :: t) = plus(k, u)\n"),
                  SyntaxError);
}
