#include <doctest.h>

#include <algorithm>

#include "cycdt/print.hpp"
#include "cycdt/termcheck.hpp"
#include "gen.hpp"

using namespace cyc;

namespace {

const RewriteRule* find_rule(const std::vector<RewriteRule>& rules, const std::string& name) {
  for (auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

RefinedSignature refined_with_rules(const Program& p, const std::vector<RewriteRule>& rules) {
  RefinedSignature rs = refine_signature(*p.sig);
  rs.add_rules(rules);
  return rs;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("refined signature for lists") {
  Program p = load_file(test::corpus("sum.cyc"));
  RefinedSignature rs = refine_signature(*p.sig);
  CHECK(rs.base_types.count("Var_CList"));
  CHECK(rs.base_types.count("Var_CNat"));
  int embeddings = 0;
  for (auto& [k, s] : rs.symbols)
    if (s.name == "v_CList" || s.name == "v_CNat") {
      ++embeddings;
      REQUIRE(s.args.size() == 1);
      CHECK(s.args[0].result == "Var_" + s.result);
    }
  CHECK(embeddings == 2);

  RefinedSignature empty = refine_signature(*load_program("").sig);
  for (auto& t : empty.base_types) CHECK(t.rfind("Var_", 0) != 0);
  CHECK(empty.symbols.empty());
  CHECK(empty.all_positive());
}

TEST_CASE("branching trees are positive") {
  Program p = load_file(test::corpus("tree.cyc"));
  auto rules = RuleSet::foldr_simp(p.sig).enumerate(2);
  RefinedSignature rs = refined_with_rules(p, rules);
  CHECK(rs.positive.at("CTree"));
  CHECK(rs.positive.at("Bool"));
  CHECK(rs.all_positive());
  CHECK(rs.type_order_well_founded());
}

TEST_CASE("without the refinement cycle binders keep the datatype") {
  Program p = load_file(test::corpus("sum.cyc"));
  auto rules = RuleSet::foldr_simp(p.sig).enumerate(2);
  RefinedSignature plain = refine_signature(*p.sig, false), refined = refine_signature(*p.sig, true);
  plain.add_rules(rules);
  refined.add_rules(rules);
  auto binder_of_cy1 = [](const RefinedSignature& rs) {
    for (auto& [k, s] : rs.symbols)
      if (s.name == "cy^1" && s.result == "CList") return s.args.at(0).args.at(0);
    return TypeName("?");
  };
  CHECK(binder_of_cy1(plain) == "CList");
  CHECK(binder_of_cy1(refined) == "Var_CList");
  for (auto& t : plain.base_types) CHECK(t.rfind("Var_", 0) != 0);
  // cycles head simplification rules, so they are defined symbols and
  // positivity concerns the datatype constructors only
  CHECK(plain.defined.count("cy"));
  CHECK(plain.all_positive());
}

TEST_CASE("accessibility") {
  Program p = load_file(test::corpus("sum.cyc"));
  RefinedSignature rs = refined_with_rules(p, RuleSet::foldr_simp(p.sig).enumerate(2));

  MetaContext ctx;
  ctx["e"] = {{"CNat", "CNat"}, {"CNat"}};
  std::string z = fresh_name("z"), x = fresh_name("x");
  Term bound = abs({{"z", "CNat"}, {"x", "CNat"}}, {z, x}, meta("e", {fvar(z, "CNat"), fvar(x, "CNat")}));
  std::vector<std::string> tr;
  CHECK(accessible("e", bound, rs, ctx, &tr));
  CHECK(tr == std::vector<std::string>{"a1", "a2"});

  // arguments must be distinct bound variables
  Term repeated = abs({{"z", "CNat"}, {"x", "CNat"}}, {z, x}, meta("e", {fvar(z, "CNat"), fvar(z, "CNat")}));
  CHECK_FALSE(accessible("e", repeated, rs, ctx));

  MetaContext one;
  one["m"] = {{"CNat"}, {"CNat"}};
  Term mx = abs({{"x", "CNat"}}, {x}, meta("m", {fvar(x, "CNat")}));
  CHECK(accessible("m", mx, rs, one));
  CHECK_FALSE(accessible("n", mx, rs, one));

  // under a constructor
  MetaContext tail;
  tail["m"] = {{}, {"CList"}};
  const Symbol* cons = p.sig->ctor("CList", "::");
  Term under = app(cons, {p.term("0"), meta("m", {})});
  tr.clear();
  CHECK(accessible("m", under, rs, tail, &tr));
  CHECK(has(tr, "a3"));

  // the structure argument of a fold into another type is not accessible
  const Term& body = p.funs.at("sum").body;
  Term f = app(body->sym, {body->args[0], body->args[1], meta("m", {})});
  CHECK_FALSE(accessible("m", f, rs, tail));
}

TEST_CASE("covered subterms") {
  Program p = load_file(test::corpus("sum.cyc"));
  VarContext vars{{"y", "CNat"}};
  Term t = p.term("plus(0, S(y))", std::nullopt, vars);
  Term u = p.term("S(y)", std::nullopt, vars);
  CHECK(covered_subterm(t, u));
  CHECK(strictly_covered(t, u));
  CHECK(covered_subterm(t, t));
  CHECK_FALSE(strictly_covered(t, t));
  CHECK_FALSE(covered_subterm(u, t));

  // y. cy(x. m[x]) covers y. x. m[x]
  std::string y = fresh_name("y"), x = fresh_name("x");
  Term inner = cy({{"x", "CNat"}}, {x}, meta("m", {fvar(x, "CNat")}));
  Term lam = abs({{"y", "CNat"}}, {y}, inner);
  Term flat = abs({{"y", "CNat"}, {"x", "CNat"}}, {y, x}, meta("m", {fvar(x, "CNat")}));
  CHECK(covered_subterm(lam, flat));
  CHECK(strictly_covered(lam, flat));
  CHECK_FALSE(covered_subterm(flat, lam));
}

TEST_CASE("generated rules satisfy the schema") {
  Program p = load_file(test::corpus("sum.cyc"));
  auto rules = RuleSet::foldr_simp(p.sig).enumerate(2);
  RefinedSignature rs = refined_with_rules(p, rules);

  const RewriteRule* r3 = find_rule(rules, "3r");
  REQUIRE(r3);
  GSRuleReport g3 = check_rule_gs(*r3, rs);
  CHECK(g3.pass);
  CHECK(has(g3.clauses, "3"));
  CHECK(has(g3.clauses, "7"));

  const RewriteRule* r10 = find_rule(rules, "10r");
  REQUIRE(r10);
  GSRuleReport g10 = check_rule_gs(*r10, rs);
  CHECK(g10.pass);
  CHECK(has(g10.clauses, "6"));

  for (auto& r : rules) {
    GSRuleReport g = check_rule_gs(r, rs);
    CAPTURE(r.name);
    CAPTURE(r.instance);
    CHECK(g.pass);
    CHECK(replay(g, r, rs));
  }
}

TEST_CASE("the fixed-point rule fails at the recursive-call clause") {
  RewriteRule fix = fixpoint_rule("CNat");
  Program p = load_file(test::corpus("sum.cyc"));
  RefinedSignature rs = refined_with_rules(p, {fix});
  GSRuleReport g = check_rule_gs(fix, rs);
  CHECK_FALSE(g.pass);
  REQUIRE(g.failure);
  CHECK(g.failure->clause == "7");
  CHECK(g.failure->detail.find("no argument decreases") != std::string::npos);
}

TEST_CASE("system verdicts") {
  for (auto f : {"sum.cyc", "tree.cyc"}) {
    Program p = load_file(test::corpus(f));
    GSReport rep = check_system(RuleSet::foldr_simp(p.sig));
    CAPTURE(f);
    CHECK(rep.pass);
    CHECK(rep.type_order_wf);
    CHECK(rep.constructors_positive);
    CHECK(rep.precedence_wf);
  }

  Program p = load_file(test::corpus("sum.cyc"));
  auto rules = RuleSet::foldr_simp(p.sig).enumerate(2);
  GSReport base = check_system(rules, *p.sig);
  auto with = rules;
  with.push_back(fixpoint_rule("CNat"));
  GSReport rep = check_system(with, *p.sig);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.rules.size() == rules.size() + 1);
  CHECK_FALSE(rep.rules.back().pass);
  REQUIRE(rep.rules.back().failure);
  CHECK(rep.rules.back().failure->clause == "7");
  // adding a rule leaves the other verdicts alone
  for (std::size_t i = 0; i < rules.size(); ++i) CHECK(rep.rules[i].pass == base.rules[i].pass);
}

TEST_CASE("every corpus signature passes") {
  for (auto f : {"sum.cyc", "eq12.cyc", "tree.cyc", "ctail.cyc", "strings.cyc", "friends.cyc", "badterm.cyc",
                 "negatives.cyc"}) {
    Program p = load_file(test::corpus(f));
    GSReport rep = check_system(RuleSet::foldr_simp(p.sig));
    CAPTURE(f);
    CHECK(rep.pass);
    for (auto& r : rep.rules)
      if (!r.pass && r.failure) MESSAGE(r.rule << " " << r.instance << ": " << r.failure->detail);
  }
}
