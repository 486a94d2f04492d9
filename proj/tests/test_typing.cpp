#include <doctest.h>

#include "cycdt/rewrite.hpp"
#include "cycdt/typing.hpp"
#include "gen.hpp"

using namespace cyc;
using test::lab;

namespace {

const RewriteRule* find_rule(const std::vector<RewriteRule>& rules, const std::string& name,
                             const std::string& instance_part) {
  for (auto& r : rules)
    if (r.name == name && r.instance.find(instance_part) != std::string::npos) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("inference on closed terms") {
  CHECK(type_of(lab().term("0")) == TypeSeq{"CNat"});
  CHECK(type_of(lab().term("cy(x. S(S(0)) :: S(0) :: x)")) == TypeSeq{"CList"});
  CHECK(type_of(lab().term("<0, []>")) == TypeSeq{"CNat", "CList"});
  CHECK(type_of(lab().term("<>", TypeSeq{})) == TypeSeq{});
  CHECK(type_of(lab().term("ctail(cy(x. 1 :: x))")) == TypeSeq{"CList"});
  const Symbol* s = lab().sig->ctor("CNat", "S");
  const Symbol* nil = lab().sig->ctor("CList", "[]");
  CHECK_THROWS_AS(type_of(app(s, {app(nil, {})})), TypeError);
  CHECK_THROWS_AS(type_of(app(s, {})), TypeError);
}

TEST_CASE("inference with contexts") {
  MetaContext ctx{{"m", {{"CNat"}, {"CList"}}}};
  VarContext vars{{"y", "CNat"}};
  Term t = meta("m", {fvar("y")});
  CHECK(infer(ctx, vars, t) == TypeSeq{"CList"});
  CHECK_THROWS_AS(infer(ctx, {}, t), TypeError);
  CHECK_THROWS_AS(infer(ctx, vars, meta("m", {})), TypeError);
  CHECK_THROWS_AS(infer({}, vars, t), TypeError);
}

TEST_CASE("generated rules typecheck") {
  for (bool simp : {false, true}) {
    auto rules = (simp ? RuleSet::simp(lab().sig) : RuleSet::foldr(lab().sig)).enumerate(2);
    CHECK(!rules.empty());
    for (auto& r : rules) {
      CAPTURE(r.name);
      CAPTURE(r.instance);
      CHECK_NOTHROW(check_rule(r));
    }
  }
}

TEST_CASE("cycle commutation rule over lists has one target copy per cycle binder") {
  auto rules = RuleSet::foldr(lab().sig).enumerate(2);
  int seen = 0;
  for (auto& r : rules) {
    if (r.name != "4r" || !is_fold(r.lhs) || r.lhs->sym->source != "CList") continue;
    Term cyc = fold_structure(r.lhs);
    if (cyc->tag == Tag::Abs) cyc = cyc->body();
    REQUIRE(is_app(cyc, SymKind::Cy));
    TypeSeq expected;
    for (int i = 0; i < abs_arity(cyc->args[0]); ++i)
      expected.insert(expected.end(), r.lhs->sym->target.begin(), r.lhs->sym->target.end());
    CHECK(check_rule(r) == expected);
    ++seen;
  }
  CHECK(seen > 0);
}

TEST_CASE("unit elimination rule for trees") {
  auto rules = RuleSet::simp(lab().sig).enumerate(2);
  const RewriteRule* r = find_rule(rules, "15r", "CTree");
  REQUIRE(r != nullptr);
  CHECK(check_rule(*r) == TypeSeq{"CTree"});
}

TEST_CASE("ill-formed rules are rejected") {
  const Symbol* s = lab().sig->ctor("CNat", "S");
  RewriteRule r{"bad", "fixture", "", {{"m", {{}, {"CNat"}}}, {"n", {{}, {"CNat"}}}}, app(s, {meta("m", {})}),
                meta("n", {})};
  CHECK_THROWS_AS(check_rule(r), TypeError);
  RewriteRule w{"bad", "fixture", "", {{"m", {{}, {"CNat"}}}}, app(s, {meta("m", {})}), lab().term("[]")};
  CHECK_THROWS_AS(check_rule(w), TypeError);
}

TEST_CASE("types are preserved along corpus evaluations") {
  for (auto f : {"sum.cyc", "tree.cyc", "ctail.cyc", "strings.cyc", "friends.cyc", "badterm.cyc"}) {
    Program p = load_file(test::corpus(f));
    RuleSet rules = RuleSet::foldr_simp(p.sig);
    for (auto& d : p.directives) {
      Trace tr = normalize(d.lhs, rules);
      TypeSeq ty = type_of(d.lhs);
      for (auto& s : tr.steps) CHECK(type_of(s.after) == ty);
      for (auto& s : all_steps(d.lhs, rules)) CHECK(type_of(s.after) == ty);
    }
  }
}

TEST_CASE("inference is deterministic") {
  test::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    Term t = lab().term(g.term("CList", 4, false), TypeSeq{"CList"});
    TypeSeq a = type_of(t);
    CHECK(a == TypeSeq{"CList"});
    CHECK(type_of(t) == a);
  }
}
