#include "properties.hpp"

#include <chrono>
#include <functional>

#include "cycdt/print.hpp"
#include "cycdt/prover.hpp"
#include "gen.hpp"

namespace cyc::test {

namespace {

using Vars = std::map<std::string, TypeName>;

class Run {
 public:
  explicit Run(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }
  void pass() { ++r_.cases; }
  void skip() { ++r_.skipped; }
  int cases() const { return r_.cases; }
  void fail(const std::string& what) {
    ++r_.cases;
    if (r_.failures++ == 0) r_.first_failure = what;
  }
  void check(bool ok, const std::function<std::string()>& what) { ok ? pass() : fail(what()); }
  PropertyResult done() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  PropertyResult r_;
  std::chrono::steady_clock::time_point start_;
};

Term parse(const std::string& s, const TypeSeq& ty, const Vars& vars = {}) { return lab().term(s, ty, vars); }

// Random fold-free term of type `ty` whose free variables are among `vars`.
Term value(Gen& g, const TypeName& ty, const Vars& vars, int depth) {
  g.free.clear();
  for (auto& [n, t] : vars) g.free[t].push_back(n);
  std::string s = g.value(ty, depth);
  g.free.clear();
  return parse(s, {ty}, vars);
}

Term apply_fun(const std::string& f, const std::vector<Term>& args) {
  const FunInfo& fi = lab().funs.at(f);
  std::map<std::string, Term> sub;
  for (std::size_t i = 0; i < args.size(); ++i) sub[fi.params[i]] = args[i];
  return subst_vars(fi.body, sub);
}

Term proj(int i, const TypeSeq& types, const Term& u) {
  std::vector<Binder> bs;
  std::vector<std::string> names;
  for (auto& t : types) {
    bs.push_back({"y", t});
    names.push_back(fresh_name("y"));
  }
  return comp(abs(bs, names, fvar(names[i], types[i])), u);
}

Term fv(const std::string& n, const TypeName& t) { return fvar(n, t); }

std::string show(const Term& l, const Term& r) { return print(l) + "  vs  " + print(r); }

const TypeName kTypes[] = {"CNat", "CList", "CTree"};

}  // namespace

PropertyResult strategy_independence(int n, std::uint64_t seed) {
  Run run("strategy independence");
  RuleSet foldr = RuleSet::foldr(lab().sig);
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    TypeName ty = kTypes[i % 3];
    Term t = parse(g.term(ty, 4, false), {ty});
    Term nf = normal_form(t, foldr);
    std::mt19937_64 rng(seed * 7919 + i);
    Trace tr = normalize_with(
        t, [&](const Term& u) { return random_step(u, foldr, rng); }, default_fuel(), false);
    run.check(alpha_eq(tr.final, nf), [&] { return print(t) + " gives " + show(nf, tr.final); });
  }
  return run.done();
}

PropertyResult subject_reduction(int n, std::uint64_t seed) {
  Run run("subject reduction");
  RuleSet all = RuleSet::foldr_simp(lab().sig);
  Gen g(seed);
  static const TypeName types[] = {"CNat", "CList", "CTree", "Bool"};
  for (int i = 0; i < n; ++i) {
    TypeName ty = types[i % 4];
    Term t = parse(g.term(ty, 4, false), {ty});
    std::string bad;
    try {
      for (auto& st : all_steps(t, all))
        if (type_of(st.after) != TypeSeq{ty}) bad = st.rule->name + " on " + print(t);
      for (auto& st : normalize(t, all).steps)
        if (type_of(st.after) != TypeSeq{ty}) bad = st.rule->name + " on " + print(st.before);
    } catch (const TypeError& e) {
      bad = std::string(e.what()) + " in " + print(t);
    }
    run.check(bad.empty(), [&] { return bad; });
  }
  return run.done();
}

PropertyResult axiom_instances(int per_scheme, std::uint64_t seed) {
  Run run("axiom instances");
  Gen g(seed);
  g.compositions = false;
  const Signature& sig = *lab().sig;
  auto check = [&](const char* scheme, const Term& l, const Term& r) {
    bool ok = false;
    std::string err;
    try {
      ok = eq_mod_bisim(l, r, sig);
    } catch (const std::exception& e) {
      err = e.what();
    }
    run.check(ok, [&] { return std::string(scheme) + ": " + show(l, r) + (err.empty() ? "" : " (" + err + ")"); });
  };

  for (int i = 0; i < per_scheme; ++i) {
    // (y1, y2. t) @ <s1, s2> = t[s1, s2]
    {
      Term t = value(g, "CList", {{"u1", "CNat"}, {"u2", "CList"}}, 3);
      Term s1 = value(g, "CNat", {}, 2), s2 = value(g, "CList", {}, 3);
      Term l = comp(abs({{"y", "CNat"}, {"y", "CList"}}, {"u1", "u2"}, t), tuple({s1, s2}));
      check("sub", l, subst_vars(t, {{"u1", s1}, {"u2", s2}}));
    }
    // <pi1 @ t, pi2 @ t> = t
    {
      TypeSeq ts{"CNat", "CList"};
      Term a = value(g, "CNat", {{"u1", "CNat"}}, 2);
      Term b = value(g, "CList", {{"u1", "CNat"}, {"u2", "CList"}}, 3);
      Term t = g.coin() ? cy({{"a", "CNat"}, {"b", "CList"}}, {"u1", "u2"}, tuple({a, b}))
                        : tuple({value(g, "CNat", {}, 2), value(g, "CList", {}, 3)});
      check("SP", tuple({proj(0, ts, t), proj(1, ts, t)}), t);
    }
    // cy(x. s[t[x]]) = s[cy(z. t[s[z]])]
    {
      TypeName a = kTypes[g.uniform(0, 2)], c = g.coin() ? a : kTypes[g.uniform(0, 2)];
      Term s = value(g, c, {{"u", a}}, 3), t = value(g, a, {{"v", c}}, 3);
      Term l = cy({{"x", c}}, {"w"}, subst_vars(s, {{"u", subst_vars(t, {{"v", fv("w", c)}})}}));
      Term inner = cy({{"z", a}}, {"w"}, subst_vars(t, {{"v", subst_vars(s, {{"u", fv("w", a)}})}}));
      check("dinat1", l, subst_vars(s, {{"u", inner}}));
    }
    // cy(x. s[t[x]]) = (z. s[z]) @ cy(z. t[s[z]]) at width 2
    {
      TypeSeq ts{"CNat", "CList"};
      Term s = tuple({value(g, "CNat", {{"z1", "CNat"}}, 2), value(g, "CList", {{"z1", "CNat"}, {"z2", "CList"}}, 3)});
      Term t = tuple({value(g, "CNat", {{"v1", "CNat"}}, 2), value(g, "CList", {{"v1", "CNat"}, {"v2", "CList"}}, 3)});
      auto s_of = [&](const Term& u) {
        return subst_vars(s, {{"z1", proj(0, ts, u)}, {"z2", proj(1, ts, u)}});
      };
      auto t_of = [&](const Term& u) {
        return subst_vars(t, {{"v1", proj(0, ts, u)}, {"v2", proj(1, ts, u)}});
      };
      Term xs = tuple({fv("w1", "CNat"), fv("w2", "CList")});
      Term l = cy({{"x", "CNat"}, {"x", "CList"}}, {"w1", "w2"}, s_of(t_of(xs)));
      Term r = comp(abs({{"z", "CNat"}, {"z", "CList"}}, {"z1", "z2"}, s),
                    cy({{"z", "CNat"}, {"z", "CList"}}, {"w1", "w2"}, t_of(s_of(xs))));
      check("dinatn", l, r);
    }
    // cy(x, y. <t, s>) = <cy(x. (y. t) @ cy(y. s)), cy(y. (x. s) @ cy(x. (y. t) @ cy(y. s)))>
    {
      TypeName tx = g.coin() ? "CList" : "CNat";
      Vars both{{"bx", tx}, {"by", "CList"}};
      Term t = value(g, tx, both, 3), s = value(g, "CList", both, 3);
      Term l = cy({{"x", tx}, {"y", "CList"}}, {"bx", "by"}, tuple({t, s}));
      Term a = cy({{"x", tx}}, {"bx"}, comp(abs({{"y", "CList"}}, {"by"}, t), cy({{"y", "CList"}}, {"by"}, s)));
      Term b = cy({{"y", "CList"}}, {"by"}, comp(abs({{"x", tx}}, {"bx"}, s), a));
      check("Bekic", l, tuple({a, b}));
    }
    // cy(y1, y2. <t[rho1], t[rho2]>) = <cy(y. t[y, y]), cy(y. t[y, y])>
    {
      TypeName ty = g.coin() ? "CList" : "CTree";
      Term t = value(g, ty, {{"c1", ty}, {"c2", ty}}, 3);
      const char* ys[] = {"w1", "w2"};
      auto rho = [&] {
        return subst_vars(t, {{"c1", fv(ys[g.uniform(0, 1)], ty)}, {"c2", fv(ys[g.uniform(0, 1)], ty)}});
      };
      Term r1 = rho(), r2 = rho();
      Term l = cy({{"y", ty}, {"y", ty}}, {"w1", "w2"}, tuple({r1, r2}));
      Term diag = cy({{"y", ty}}, {"w"}, subst_vars(t, {{"c1", fv("w", ty)}, {"c2", fv("w", ty)}}));
      check("CI", l, tuple({diag, diag}));
    }
    // branching axioms
    for (TypeName ty : {"CTree", "Bool"}) {
      const auto& d = sig.datatype(ty);
      Term nil = app(d.br_unit, {});
      auto br = [&](const Term& x, const Term& y) { return app(d.br_branch, {x, y}); };
      Term s = value(g, ty, {}, 3), t = value(g, ty, {}, 3), u = value(g, ty, {}, 3);
      if (ty == "CTree" || g.coin()) {
        check("del", cy({{"x", ty}}, {"w"}, br(fv("w", ty), t)), t);
        check("unitL", br(nil, t), t);
        check("unitR", br(t, nil), t);
        check("assoc", br(br(s, t), u), br(s, br(t, u)));
        check("comm", br(s, t), br(t, s));
        check("degen", br(t, t), t);
      }
    }
  }
  return run.done();
}

PropertyResult partition_oracle(int n, std::uint64_t seed) {
  Run run("partition refinement oracle");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Chart c = random_chart(rng, 8);
    std::vector<int> blocks = coarsest_partition(c);
    auto naive = naive_bisimulation(c);
    std::string bad;
    for (std::size_t p = 0; p < c.nodes.size() && bad.empty(); ++p)
      for (std::size_t q = 0; q < c.nodes.size() && bad.empty(); ++q)
        if ((blocks[p] == blocks[q]) != naive[p][q])
          bad = "nodes " + std::to_string(p) + " and " + std::to_string(q) + " of a " + std::to_string(c.nodes.size()) +
                "-node chart";
    Chart d = random_chart(rng, 8);
    if (bad.empty() && c.root_types == d.root_types) {
      auto joint = naive_bisimulation(chart_union(c, d));
      bool expect = joint[c.roots[0]][c.nodes.size() + d.roots[0]];
      if (bisimilar(c, d).equal != expect) bad = "roots of two charts";
    }
    run.check(bad.empty(), [&] { return bad; });
  }
  return run.done();
}

namespace {

// A term bisimilar to t: cycles unfolded or added and branching axioms
// applied at random positions.
Term perturb(const Term& t, Gen& g, int& changes) {
  if (t->tag == Tag::Abs) {
    auto names = fresh_names(t->binders);
    return abs(t->binders, names, perturb(open_names(t, names, &t->binders), g, changes));
  }
  Term u = t;
  if (t->tag == Tag::App && !t->args.empty()) {
    std::vector<Term> args;
    for (auto& a : t->args) args.push_back(perturb(a, g, changes));
    u = rebuild(t, std::move(args));
  }
  if (u->tag != Tag::App || !g.coin(0.3)) return u;
  TypeSeq ty = type_of(u);
  if (ty.size() != 1) return u;
  const Signature& sig = *lab().sig;
  std::vector<std::function<Term()>> options;
  if (is_app(u, SymKind::Cy) && abs_arity(u->args[0]) == 1) options.push_back([&] { return open(u->args[0], {u}); });
  options.push_back([&] { return cy({{"w", ty[0]}}, {fresh_name("w")}, u); });
  const DatatypeDecl* d = sig.find_datatype(ty[0]);
  if (d && d->has_axbr()) {
    Term nil = app(d->br_unit, {});
    options.push_back([&, nil] { return app(d->br_branch, {u, nil}); });
    options.push_back([&, nil] { return app(d->br_branch, {nil, u}); });
    options.push_back([&] { return app(d->br_branch, {u, u}); });
    if (u->sym == d->br_branch) options.push_back([&] { return app(d->br_branch, {u->args[1], u->args[0]}); });
  }
  ++changes;
  return options[g.uniform(0, static_cast<int>(options.size()) - 1)]();
}

}  // namespace

PropertyResult fold_preserves_bisim(int n, std::uint64_t seed) {
  Run run("fold preserves bisimilarity");
  RuleSet foldr = RuleSet::foldr(lab().sig);
  const Signature& sig = *lab().sig;
  Gen g(seed);
  g.compositions = false;
  Term one = parse("S(0)", {"CNat"});
  for (int i = 0; i < n; ++i) {
    TypeName ty = kTypes[i % 3];
    Term s = parse(g.value(ty, 4), {ty});
    int changes = 0;
    Term t = perturb(s, g, changes);
    if (changes == 0) t = cy({{"w", ty}}, {fresh_name("w")}, s);
    if (!eq_mod_bisim(s, t, sig)) {
      run.fail("perturbation changed the value: " + show(s, t));
      continue;
    }
    std::vector<std::pair<Term, Term>> apps;
    if (ty == "CNat") apps.push_back({apply_fun("plus", {s, one}), apply_fun("plus", {t, one})});
    if (ty == "CList")
      for (auto f : {"sum", "mapinc", "ctail"}) apps.push_back({apply_fun(f, {s}), apply_fun(f, {t})});
    if (ty == "CTree")
      for (auto f : {"mirror", "isEmpty"}) apps.push_back({apply_fun(f, {s}), apply_fun(f, {t})});
    std::string bad;
    bool incomplete = false;
    for (auto& [l, r] : apps) {
      ProofResult pr = prove(l, r, foldr);
      if (pr.verdict == Verdict::Refused) {
        bad = "refused " + show(l, r) + ": " + pr.reason;
      } else if (pr.incomplete) {
        incomplete = true;
      } else if (pr.verdict != Verdict::Equal) {
        bad = "unequal " + show(pr.left.final, pr.right.final);
      }
      if (!bad.empty()) break;
    }
    if (bad.empty() && incomplete) {
      run.skip();
      continue;
    }
    run.check(bad.empty(), [&] { return bad; });
  }
  return run.done();
}

PropertyResult bad_term_refusal(int n, std::uint64_t seed) {
  Run run("bad-term refusal");
  RuleSet foldr = RuleSet::foldr(lab().sig);
  Gen g(seed);
  g.compositions = false;
  for (int i = 0; i < n; ++i) {
    std::string num = g.value("CNat", 2);
    std::string src, other;
    switch (i % 6) {
      case 0: src = "cy(z : CList. " + num + " :: mapinc(z))"; break;
      case 1: src = "cy(z : CList. " + num + " :: " + g.value("CNat", 2) + " :: mapinc(z))"; break;
      case 2: src = "cy(z : CList. " + num + " :: mapinc(" + g.value("CNat", 2) + " :: z))"; break;
      case 3: src = "cy(z : CList. " + num + " :: mapinc(mapinc(z)))"; break;
      case 4: src = "cy(z : CList. " + num + " :: cy(y : CList. " + g.value("CNat", 2) + " :: mapinc(z)))"; break;
      default: src = "cy(z : CNat. S(plus(z, " + num + ")))"; break;
    }
    TypeName ty = i % 6 == 5 ? "CNat" : "CList";
    Term l = parse(src, {ty}), r = parse(g.value(ty, 3), {ty});
    ProofResult pr = i % 2 ? prove(l, r, foldr) : prove(r, l, foldr);
    run.check(pr.verdict == Verdict::Refused && pr.witness,
              [&] { return src + " was " + verdict_name(pr.verdict); });
  }
  return run.done();
}

PropertyResult good_term_closure(int n, std::uint64_t seed) {
  Run run("good-term closure");
  RuleSet foldr = RuleSet::foldr(lab().sig);
  Gen g(seed);
  for (int attempts = 0; attempts < 50 * n && run.cases() < n; ++attempts) {
    TypeName ty = kTypes[attempts % 3];
    Term t = parse(g.term(ty, 4, attempts % 2 == 0), {ty});
    if (!in_T(t, foldr)) {
      run.skip();
      continue;
    }
    std::string bad;
    for (auto& st : all_steps(t, foldr)) {
      TCheck c = check_T(st.after, foldr);
      if (!c.ok) {
        bad = st.rule->name + " takes " + print(t) + " to " + print(st.after) + " (" + c.reason + ")";
        break;
      }
    }
    run.check(bad.empty(), [&] { return bad; });
  }
  return run.done();
}

}  // namespace cyc::test
