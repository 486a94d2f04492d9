#include "cycdt/termcheck.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#include "cycdt/print.hpp"

namespace cyc {

const int kTopRank = INT_MAX;

std::string RType::str() const {
  std::string s;
  for (auto& a : args) s += a + " -> ";
  return s + result;
}

TypeName RefinedSignature::var(const TypeName& c) const { return var_refinement ? "Var_" + c : c; }

TypeName RefinedSignature::product(const TypeSeq& ts) {
  if (ts.size() == 1) return ts[0];
  if (ts.empty()) return "1";
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? " * " : "") + ts[i];
  return s + ")";
}

namespace {

TypeSeq seq_of(const Term& t, const MetaContext& meta) {
  try {
    return type_of(t, meta);
  } catch (const Error&) {
    return {};
  }
}

std::string key_of(const RSymbol& s) {
  std::string k = s.name + " :";
  for (auto& a : s.args) k += " " + a.str() + ",";
  return k + " -> " + s.result;
}

// Abstraction chains opened into one binder list.
struct Flat {
  std::vector<Binder> binders;
  std::vector<std::string> names;
  Term body;
};

Flat flatten(Term t) {
  Flat f;
  while (t->tag == Tag::Abs) {
    auto names = fresh_names(t->binders);
    Term body = open_names(t, names);
    f.binders.insert(f.binders.end(), t->binders.begin(), t->binders.end());
    f.names.insert(f.names.end(), names.begin(), names.end());
    t = body;
  }
  f.body = t;
  return f;
}

Flat extend(const Flat& outer, const Term& inner) {
  Flat in = flatten(inner);
  Flat r = outer;
  r.binders.insert(r.binders.end(), in.binders.begin(), in.binders.end());
  r.names.insert(r.names.end(), in.names.begin(), in.names.end());
  r.body = in.body;
  return r;
}

bool flat_equal(const Flat& a, const Flat& b) {
  if (a.binders.size() != b.binders.size()) return false;
  std::map<std::string, Term> ren;
  for (std::size_t i = 0; i < a.binders.size(); ++i) {
    if (a.binders[i].type != b.binders[i].type) return false;
    ren[b.names[i]] = fvar(a.names[i], a.binders[i].type);
  }
  return alpha_eq(a.body, subst_vars(b.body, ren));
}

bool same_flat(const Term& a, const Term& b) { return flat_equal(flatten(a), flatten(b)); }

}  // namespace

std::string symbol_family(const Term& app) {
  const Symbol* s = app->sym;
  switch (s->kind) {
    case SymKind::Ctor: return "ctor:" + s->name + ":" + s->result;
    case SymKind::Unit: return "unit";
    case SymKind::Tuple: return "tuple";
    case SymKind::Cy: return "cy";
    case SymKind::Comp: return "@";
    case SymKind::Fold: return "fold:" + s->name;
  }
  return "?";
}

int symbol_rank(const Term& app) {
  switch (app->sym->kind) {
    case SymKind::Fold:
    case SymKind::Comp:
      return kTopRank;
    case SymKind::Cy:
      return abs_arity(app->args[0]);
    default:
      return 0;
  }
}

RSymbol refined_symbol(const RefinedSignature& rs, const Term& app, const MetaContext& meta) {
  const Symbol* s = app->sym;
  RSymbol r;
  r.family = symbol_family(app);
  r.rank = symbol_rank(app);
  auto vars = [&](const TypeSeq& ts) {
    TypeSeq out;
    for (auto& t : ts) out.push_back(rs.var(t));
    return out;
  };
  switch (s->kind) {
    case SymKind::Ctor:
      r.name = s->name;
      for (auto& a : s->args) r.args.push_back({{}, a});
      r.result = s->result;
      break;
    case SymKind::Unit:
      r.name = "<>";
      r.result = RefinedSignature::product({});
      break;
    case SymKind::Tuple: {
      r.name = "<>";
      TypeSeq all;
      for (auto& a : app->args) {
        TypeSeq ts = seq_of(a, meta);
        r.args.push_back({{}, RefinedSignature::product(ts)});
        all.insert(all.end(), ts.begin(), ts.end());
      }
      r.result = RefinedSignature::product(all);
      break;
    }
    case SymKind::Cy: {
      TypeSeq ts;
      for (auto& b : app->args[0]->binders) ts.push_back(b.type);
      r.name = "cy^" + std::to_string(ts.size());
      r.result = RefinedSignature::product(ts);
      r.args.push_back({vars(ts), r.result});
      break;
    }
    case SymKind::Comp: {
      r.name = "@";
      TypeSeq ts;
      for (auto& b : app->args[0]->binders) ts.push_back(b.type);
      r.result = RefinedSignature::product(seq_of(app, meta));
      r.args.push_back({ts, r.result});
      r.args.push_back({{}, RefinedSignature::product(ts)});
      break;
    }
    case SymKind::Fold: {
      r.name = s->name;
      std::size_t m = s->cases.size();
      std::size_t k = app->args.size() - m - 1;
      TypeName b = RefinedSignature::product(s->target);
      for (auto* d : s->cases) r.args.push_back({vars(Signature::case_binders(d, s->target)), b});
      r.args.push_back({vars(TypeSeq(k, s->source)), s->source});
      for (std::size_t i = 0; i < k; ++i) r.args.push_back({{}, rs.var(b)});
      r.result = RefinedSignature::product(seq_of(app, meta));
      break;
    }
  }
  r.constructor = !rs.defined.count(r.family);
  return r;
}

RefinedSignature refine_signature(const Signature& sig, bool var_refinement) {
  RefinedSignature rs;
  rs.var_refinement = var_refinement;
  for (auto& t : sig.base_types()) rs.base_types.insert(t);
  for (auto& c : sig.datatype_order()) {
    for (auto* d : sig.datatype(c).ctors) {
      RSymbol s;
      s.name = d->name;
      s.family = "ctor:" + d->name + ":" + d->result;
      for (auto& a : d->args) s.args.push_back({{}, a});
      s.result = d->result;
      rs.symbols[key_of(s)] = s;
    }
    if (var_refinement) {
      rs.base_types.insert(rs.var(c));
      RSymbol v;
      v.name = "v_" + c;
      v.family = "v:" + c;
      v.args.push_back({{}, rs.var(c)});
      v.result = c;
      rs.symbols[key_of(v)] = v;
    }
  }
  rs.recompute();
  return rs;
}

void RefinedSignature::add_rules(const std::vector<RewriteRule>& rules) {
  for (auto& r : rules)
    if (r.lhs->tag == Tag::App) defined.insert(symbol_family(r.lhs));
  std::function<void(const Term&, const MetaContext&)> scan = [&](const Term& t, const MetaContext& meta) {
    switch (t->tag) {
      case Tag::Abs:
        scan(open_names(t, fresh_names(t->binders)), meta);
        return;
      case Tag::Meta:
        for (auto& a : t->args) scan(a, meta);
        return;
      case Tag::App: {
        RSymbol s = refined_symbol(*this, t, meta);
        symbols.emplace(key_of(s), s);
        for (auto& a : t->args) scan(a, meta);
        return;
      }
      default:
        return;
    }
  };
  for (auto& r : rules) {
    scan(r.lhs, r.meta);
    scan(r.rhs, r.meta);
  }
  recompute();
}

void RefinedSignature::recompute() {
  below.clear();
  positive.clear();
  for (auto& [k, s] : symbols) {
    s.constructor = !defined.count(s.family);
    base_types.insert(s.result);
    for (auto& a : s.args) {
      base_types.insert(a.result);
      for (auto& x : a.args) base_types.insert(x);
    }
  }
  for (auto& [k, s] : symbols) {
    if (!s.constructor) continue;
    auto& set = below[s.result];
    for (auto& a : s.args) {
      set.insert(a.result);
      for (auto& x : a.args) set.insert(x);
    }
  }
  // reflexive-transitive closure of <=_B
  std::map<TypeName, std::set<TypeName>> le;
  for (auto& b : base_types) {
    std::set<TypeName> seen{b};
    std::vector<TypeName> todo{b};
    while (!todo.empty()) {
      TypeName x = todo.back();
      todo.pop_back();
      auto it = below.find(x);
      if (it == below.end()) continue;
      for (auto& y : it->second)
        if (seen.insert(y).second) todo.push_back(y);
    }
    le[b] = seen;  // le[b] = { a | a <=_B b }
  }
  auto equiv = [&](const TypeName& a, const TypeName& b) { return le[b].count(a) && le[a].count(b); };
  for (auto& [k, s] : symbols) {
    if (!s.constructor) continue;
    bool ok = true;
    for (auto& a : s.args)
      for (auto& x : a.args)
        if (equiv(x, s.result)) ok = false;
    auto it = positive.find(s.result);
    positive[s.result] = (it == positive.end() ? true : it->second) && ok;
  }
}

bool RefinedSignature::all_positive() const { return non_positive().empty(); }

std::vector<TypeName> RefinedSignature::non_positive() const {
  std::vector<TypeName> r;
  for (auto& [t, p] : positive)
    if (!p) r.push_back(t);
  return r;
}

bool RefinedSignature::type_order_well_founded() const {
  // The strict part of a preorder on a finite set is well-founded exactly
  // when its strongly connected components form a DAG; check by DFS on the
  // quotient graph.
  std::map<TypeName, int> state;
  std::map<TypeName, std::set<TypeName>> le;
  for (auto& b : base_types) {
    std::set<TypeName> seen{b};
    std::vector<TypeName> todo{b};
    while (!todo.empty()) {
      TypeName x = todo.back();
      todo.pop_back();
      auto it = below.find(x);
      if (it == below.end()) continue;
      for (auto& y : it->second)
        if (seen.insert(y).second) todo.push_back(y);
    }
    le[b] = seen;
  }
  auto strict = [&](const TypeName& a, const TypeName& b) { return le[b].count(a) && !le[a].count(b); };
  std::function<bool(const TypeName&)> dfs = [&](const TypeName& b) {
    state[b] = 1;
    for (auto& a : le[b]) {
      if (!strict(a, b)) continue;
      if (state[a] == 1) return false;
      if (state[a] == 0 && !dfs(a)) return false;
    }
    state[b] = 2;
    return true;
  };
  for (auto& b : base_types)
    if (state[b] == 0 && !dfs(b)) return false;
  return true;
}

// ---------------------------------------------------------------- accessibility

namespace {

bool acc_search(const std::string& z, const Term& u, const std::set<std::string>& bound,
                const RefinedSignature& rs, const MetaContext& meta, std::vector<std::string>& tr) {
  switch (u->tag) {
    case Tag::Meta: {
      if (u->name != z) return false;
      std::set<std::string> seen;
      for (auto& a : u->args)
        if (a->tag != Tag::FVar || !bound.count(a->name) || !seen.insert(a->name).second) return false;
      return true;
    }
    case Tag::Abs: {
      auto names = fresh_names(u->binders);
      std::set<std::string> b2 = bound;
      b2.insert(names.begin(), names.end());
      tr.push_back("a2");
      if (acc_search(z, open_names(u, names), b2, rs, meta, tr)) return true;
      tr.pop_back();
      return false;
    }
    case Tag::App: {
      RSymbol s = refined_symbol(rs, u, meta);
      for (std::size_t i = 0; i < u->args.size(); ++i) {
        const char* c = nullptr;
        if (s.constructor)
          c = "a3";
        else if (i < s.args.size() && s.args[i].result == s.result)
          c = "a4";
        if (!c) continue;
        tr.push_back(c);
        if (acc_search(z, u->args[i], bound, rs, meta, tr)) return true;
        tr.pop_back();
      }
      return false;
    }
    default:
      return false;
  }
}

}  // namespace

bool accessible(const std::string& z, const Term& t, const RefinedSignature& rs, const MetaContext& meta,
                std::vector<std::string>* trace) {
  std::vector<std::string> tr{"a1"};
  bool ok = acc_search(z, t, {}, rs, meta, tr);
  if (ok && trace) *trace = tr;
  return ok;
}

// ---------------------------------------------------------------- covered subterms

bool covered_subterm(const Term& t, const Term& u) {
  Flat ft = flatten(t);
  Flat fu = flatten(u);
  std::function<bool(const Term&)> walk = [&](const Term& s) {
    if (flat_equal(extend({ft.binders, ft.names, nullptr}, s), fu)) return true;
    if (s->tag != Tag::App) return false;
    for (auto& a : s->args)
      if (walk(a)) return true;
    return false;
  };
  return walk(ft.body);
}

bool strictly_covered(const Term& t, const Term& u) { return covered_subterm(t, u) && !same_flat(t, u); }

// ---------------------------------------------------------------- computable closure

namespace {

class Closure {
 public:
  Closure(const RewriteRule& r, const RefinedSignature& rs) : rule_(r), rs_(rs) {
    head_ = refined_symbol(rs, r.lhs, r.meta);
    rank_ = symbol_rank(r.lhs);
    family_ = symbol_family(r.lhs);
  }

  // Local condition of one clause at u, ignoring membership of the parts.
  bool local(const std::string& c, const Term& u, std::string* detail) const {
    auto say = [&](const std::string& s) {
      if (detail) *detail = s;
    };
    if (c == "2") return u->tag == Tag::FVar;
    if (c == "5") return u->tag == Tag::Abs;
    if (c == "1") {
      if (u->tag != Tag::Meta) return false;
      for (std::size_t j = 0; j < rule_.lhs->args.size(); ++j) {
        std::vector<std::string> tr;
        if (accessible(u->name, rule_.lhs->args[j], rs_, rule_.meta, &tr)) {
          std::string s = u->name + " accessible in argument " + std::to_string(j + 1) + " by";
          for (auto& x : tr) s += " " + x;
          say(s);
          return true;
        }
      }
      say(u->name + " is not accessible in any argument of the left-hand side");
      return false;
    }
    if (u->tag == Tag::Lit) return c == "3";
    if (u->tag != Tag::App) return false;
    RSymbol g = refined_symbol(rs_, u, rule_.meta);
    if (c == "3") {
      say(g.name + (g.constructor ? " is a constructor" : " is not a constructor"));
      return g.constructor;
    }
    if (c == "4") return u->sym->kind == SymKind::Comp;
    if (c == "6") {
      bool ok = rank_ > symbol_rank(u);
      say(head_.name + (ok ? " >S " : " is not above ") + g.name);
      return ok;
    }
    if (c == "7") {
      if (symbol_family(u) != family_ || symbol_rank(u) != rank_) {
        say(g.name + " differs from " + head_.name);
        return false;
      }
      const auto& ta = rule_.lhs->args;
      const auto& ua = u->args;
      std::size_t n = std::min(ta.size(), ua.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (same_flat(ta[i], ua[i])) continue;
        if (strictly_covered(ta[i], ua[i])) {
          say("argument " + std::to_string(i + 1) + " decreases: " + display(ta[i]) + " covers " + display(ua[i]));
          return true;
        }
        say("argument " + std::to_string(i + 1) + ": " + display(ua[i]) + " is not a strict covered subterm of " +
            display(ta[i]));
        return false;
      }
      say("no argument decreases: the first " + std::to_string(n) + " arguments are equal");
      return false;
    }
    return false;
  }

  GSNode mem(const Term& u) const {
    std::vector<std::string> order;
    switch (u->tag) {
      case Tag::FVar: order = {"2"}; break;
      case Tag::Abs: order = {"5"}; break;
      case Tag::Meta: order = {"1"}; break;
      case Tag::Lit: order = {"3"}; break;
      case Tag::App:
        order = {"7", "3", "6", "4"};
        break;
      default: break;
    }
    std::optional<GSNode> first;
    for (auto& c : order) {
      GSNode n;
      n.clause = c;
      n.term = u;
      bool applicable = local(c, u, &n.detail);
      if (!applicable) {
        // a clause whose shape matches but whose condition fails is the
        // one to report
        bool shape = (c == "7" && u->tag == Tag::App && symbol_family(u) == family_ && symbol_rank(u) == rank_) ||
                     c == "1";
        if (shape && !first) {
          n.ok = false;
          first = n;
        }
        continue;
      }
      n.ok = true;
      for (auto& part : parts(c, u)) {
        n.children.push_back(mem(part));
        if (!n.children.back().ok) n.ok = false;
      }
      if (n.ok) return n;
      if (!first) first = n;
    }
    if (first) return *first;
    GSNode n;
    n.clause = u->tag == Tag::App ? "6" : "2";
    n.term = u;
    n.ok = false;
    if (u->tag == Tag::App) {
      RSymbol g = refined_symbol(rs_, u, rule_.meta);
      n.detail = "no clause applies: " + g.name + " is not a constructor and " + head_.name + " is not above it";
    } else {
      n.detail = "no clause applies";
    }
    return n;
  }

  std::vector<Term> parts(const std::string& c, const Term& u) const {
    if (c == "5") return {open_names(u, fresh_names(u->binders))};
    if (c == "2") return {};
    if (u->tag == Tag::Meta || u->tag == Tag::App) return u->args;
    return {};
  }

 private:
  const RewriteRule& rule_;
  const RefinedSignature& rs_;
  RSymbol head_;
  int rank_ = 0;
  std::string family_;
};

void collect_clauses(const GSNode& n, std::vector<std::string>& out) {
  auto add = [&](const std::string& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  if (!n.ok) return;
  add(n.clause);
  if (n.clause == "1") {
    auto p = n.detail.find(" by ");
    if (p != std::string::npos) {
      std::string rest = n.detail.substr(p + 4);
      std::size_t s = 0;
      while (s < rest.size()) {
        auto e = rest.find(' ', s);
        if (e == std::string::npos) e = rest.size();
        add(rest.substr(s, e - s));
        s = e + 1;
      }
    }
  }
  for (auto& c : n.children) collect_clauses(c, out);
}

const GSNode* first_failure(const GSNode& n) {
  if (n.ok) return nullptr;
  for (auto& c : n.children)
    if (auto f = first_failure(c)) return f;
  return &n;
}

}  // namespace

GSRuleReport check_rule_gs(const RewriteRule& rule, const RefinedSignature& rs) {
  GSRuleReport rep;
  rep.rule = rule.name;
  rep.system = rule.system;
  rep.instance = rule.instance;
  if (rule.lhs->tag != Tag::App) {
    rep.failure = GSObligation{display(rule.lhs), "-", "left-hand side is not headed by a function symbol"};
    return rep;
  }
  Closure cl(rule, rs);
  rep.derivation = cl.mem(rule.rhs);
  rep.pass = rep.derivation.ok;
  if (rep.pass) {
    collect_clauses(rep.derivation, rep.clauses);
  } else if (auto f = first_failure(rep.derivation)) {
    rep.failure = GSObligation{display(f->term), f->clause, f->detail};
  }
  return rep;
}

bool replay(const GSRuleReport& report, const RewriteRule& rule, const RefinedSignature& rs) {
  if (!report.pass) return false;
  Closure cl(rule, rs);
  std::function<bool(const GSNode&)> go = [&](const GSNode& n) {
    if (!n.ok || !cl.local(n.clause, n.term, nullptr)) return false;
    for (auto& c : n.children)
      if (!go(c)) return false;
    return true;
  };
  return go(report.derivation);
}

GSReport check_system(const std::vector<RewriteRule>& rules, const Signature& sig, bool var_refinement) {
  RefinedSignature rs = refine_signature(sig, var_refinement);
  rs.add_rules(rules);
  GSReport rep;
  rep.type_order_wf = rs.type_order_well_founded();
  rep.non_positive = rs.non_positive();
  rep.constructors_positive = rep.non_positive.empty();
  // ranks live in the naturals extended by one top element
  rep.precedence_wf = true;
  bool all = true;
  for (auto& r : rules) {
    rep.rules.push_back(check_rule_gs(r, rs));
    all = all && rep.rules.back().pass;
  }
  rep.pass = all && rep.type_order_wf && rep.constructors_positive && rep.precedence_wf;
  return rep;
}

GSReport check_system(const RuleSet& rules, int bound) {
  return check_system(rules.enumerate(bound), rules.signature());
}

RewriteRule fixpoint_rule(const TypeName& c) {
  RewriteRule r;
  r.name = "fixpoint";
  r.system = "fixture";
  r.instance = "cy^1 [" + c + "]";
  r.meta["m"] = {{c}, {c}};
  std::string x = fresh_name("x");
  r.lhs = cy({{"x", c}}, {x}, meta("m", {fvar(x, c)}));
  r.rhs = meta("m", {r.lhs});
  return r;
}

std::string display(const Term& t) {
  std::map<std::string, Term> ren;
  std::set<std::string> used;
  for (auto& v : free_vars(t))
    if (!is_internal_name(v)) used.insert(v);
  for (auto& v : free_vars(t)) {
    if (!is_internal_name(v)) continue;
    std::string base = v.substr(0, v.find('%'));
    std::string n = base;
    for (int i = 1; used.count(n); ++i) n = base + std::to_string(i);
    used.insert(n);
    ren[v] = fvar(n);
  }
  return print(ren.empty() ? t : subst_vars(t, ren));
}

}  // namespace cyc
