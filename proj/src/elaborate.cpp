#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "cycdt/surface.hpp"

namespace cyc {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<Signature> elaborate_signature(const SourceFile& file) {
  auto sig = std::make_shared<Signature>();
  sig->add_primitive(Signature::kString);
  for (auto& d : file.ctypes) {
    try {
      sig->add_datatype(d.name);
      for (auto& c : d.ctors) {
        for (auto& a : c.args)
          if (!sig->has_type(a))
            throw SyntaxError(c.pos, "unknown type " + a + " in constructor " + c.name);
        sig->add_ctor(d.name, c.name, c.args, c.infix);
      }
      if (d.axbr) sig->set_axbr(d.name, d.unit, d.branch);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(d.pos, e.what());
    }
  }
  return sig;
}

namespace {

const char* kPi[] = {"pi1", "pi2"};

// Type reconstruction: every node gets a sequence of type variables; overloaded
// constructors, numerals and folds are resolved once enough is known.
class Elab {
 public:
  Elab(Program& prog) : prog_(prog), sig_(*prog.sig) {}

  struct Var {
    std::string surface;
    std::string internal;
    int id;
  };

  // Elaborate `e` with the given free variables (surface name -> internal name, type).
  Term run(const SPtr& e, const std::vector<std::tuple<std::string, std::string, TypeName>>& free,
           const std::optional<TypeSeq>& expected, TypeSeq* out_type) {
    std::vector<Var> env;
    for (auto& [s, i, t] : free) env.push_back({s, i, known(t)});
    auto ids = infer(e, env);
    if (expected) {
      if (expected->size() != ids.size())
        throw SyntaxError(e->pos, "expected type " + show_types(*expected) + " but the term has width " +
                                      std::to_string(ids.size()));
      for (std::size_t i = 0; i < ids.size(); ++i) unify(ids[i], known((*expected)[i]), e->pos);
    }
    solve();
    if (out_type) *out_type = resolve(ids, e->pos);
    std::vector<Var> benv = env;
    return build(e, benv);
  }

 private:
  // ---- union-find over type variables ----
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    value_.push_back("");
    return parent_.back();
  }
  int known(const TypeName& t) {
    if (!sig_.has_type(t)) throw Error("unknown type " + t);
    int v = fresh();
    value_[v] = t;
    return v;
  }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  const TypeName& val(int v) { return value_[find(v)]; }
  void unify(int a, int b, Pos p) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (!value_[a].empty() && !value_[b].empty() && value_[a] != value_[b])
      throw SyntaxError(p, "type mismatch: " + value_[a] + " vs " + value_[b]);
    if (value_[a].empty()) value_[a] = value_[b];
    parent_[b] = a;
    progress_ = true;
  }
  void unify_all(const std::vector<int>& a, const std::vector<int>& b, Pos p, const char* what) {
    if (a.size() != b.size())
      throw SyntaxError(p, std::string("width mismatch in ") + what + ": " + std::to_string(a.size()) +
                               " vs " + std::to_string(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) unify(a[i], b[i], p);
  }
  TypeSeq resolve(const std::vector<int>& ids, Pos p) {
    TypeSeq r;
    for (int i : ids) {
      if (val(i).empty()) throw SyntaxError(p, "cannot determine a type; add an annotation");
      r.push_back(val(i));
    }
    return r;
  }

  // ---- deferred constraints ----
  struct CtorC {
    const SExpr* node;
    std::vector<const Symbol*> cands;
    std::vector<int> args;
    int res;
  };
  struct NumC {
    const SExpr* node;
    std::vector<TypeName> cands;
    int res;
  };
  struct FoldC {
    const SExpr* node;
    int src;
    std::vector<std::vector<int>> case_binders;
    std::vector<std::vector<int>> case_bodies;
    std::vector<int> target;
  };

  void solve() {
    for (;;) {
      progress_ = false;
      for (auto& c : ctors_) step_ctor(c);
      for (auto& n : nums_) step_num(n);
      for (auto& f : folds_) step_fold(f);
      if (!progress_) break;
    }
    for (auto& c : ctors_)
      if (!chosen_.count(c.node)) {
        std::string ts;
        for (auto* s : c.cands) ts += (ts.empty() ? "" : ", ") + s->result;
        throw SyntaxError(c.node->pos, "ambiguous constructor '" + c.cands[0]->name +
                                           "' (could be " + ts + "); add a type annotation");
      }
    for (auto& n : nums_)
      if (!num_type_.count(n.node))
        throw SyntaxError(n.node->pos, "ambiguous numeral; add a type annotation");
    for (auto& f : folds_)
      if (!fold_done_.count(f.node))
        throw SyntaxError(f.node->pos, "cannot determine the source type of fold");
  }

  void step_ctor(CtorC& c) {
    if (chosen_.count(c.node)) return;
    std::vector<const Symbol*> keep;
    for (auto* s : c.cands) {
      bool ok = val(c.res).empty() || val(c.res) == s->result;
      for (std::size_t i = 0; ok && i < c.args.size(); ++i)
        ok = val(c.args[i]).empty() || val(c.args[i]) == s->args[i];
      if (ok) keep.push_back(s);
    }
    if (keep.empty()) {
      std::string want = val(c.res).empty() ? "" : " of type " + val(c.res);
      throw SyntaxError(c.node->pos, "no constructor '" + c.cands[0]->name + "'" + want +
                                         " fits its arguments");
    }
    if (keep.size() < c.cands.size()) progress_ = true;
    c.cands = keep;
    if (keep.size() == 1) {
      const Symbol* s = keep[0];
      chosen_[c.node] = s;
      progress_ = true;
      unify(c.res, known(s->result), c.node->pos);
      for (std::size_t i = 0; i < c.args.size(); ++i) unify(c.args[i], known(s->args[i]), c.node->pos);
    }
  }

  void step_num(NumC& n) {
    if (num_type_.count(n.node)) return;
    std::vector<TypeName> keep;
    for (auto& t : n.cands)
      if (val(n.res).empty() || val(n.res) == t) keep.push_back(t);
    if (keep.empty())
      throw SyntaxError(n.node->pos, "numeral used at type " + val(n.res) + " which has no 0/S");
    n.cands = keep;
    if (keep.size() == 1) {
      num_type_[n.node] = keep[0];
      progress_ = true;
      unify(n.res, known(keep[0]), n.node->pos);
    }
  }

  void step_fold(FoldC& f) {
    if (fold_done_.count(f.node)) return;
    const TypeName c = val(f.src);
    if (c.empty()) return;
    const DatatypeDecl* d = sig_.find_datatype(c);
    Pos p = f.node->pos;
    if (!d) throw SyntaxError(p, "fold over non-datatype " + c);
    if (d->ctors.size() != f.case_bodies.size())
      throw SyntaxError(p, "fold over " + c + " needs " + std::to_string(d->ctors.size()) +
                               " structure terms, got " + std::to_string(f.case_bodies.size()));
    fold_done_.insert(f.node);
    progress_ = true;
    for (std::size_t i = 0; i < d->ctors.size(); ++i) {
      const Symbol* ctor = d->ctors[i];
      std::vector<int> want;
      for (auto& a : ctor->args)
        if (a != c) want.push_back(known(a));
      for (auto& a : ctor->args)
        if (a == c) want.insert(want.end(), f.target.begin(), f.target.end());
      if (want.size() != f.case_binders[i].size())
        throw SyntaxError(f.node->args[i]->pos,
                          "structure term for " + ctor->name + " needs " + std::to_string(want.size()) +
                              " binders, got " + std::to_string(f.case_binders[i].size()));
      for (std::size_t k = 0; k < want.size(); ++k) unify(want[k], f.case_binders[i][k], p);
      unify_all(f.case_bodies[i], f.target, f.node->args[i]->pos, "fold structure term");
    }
  }

  // ---- pass 1: constraints ----
  std::vector<int> fresh_n(std::size_t n) {
    std::vector<int> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(fresh());
    return r;
  }

  std::vector<int> bind(const std::vector<SBinder>& bs, const SExpr* owner, std::vector<Var>& env) {
    std::vector<int> ids;
    for (auto& b : bs) {
      int id = b.type.empty() ? fresh() : known_at(b.type, owner->pos);
      ids.push_back(id);
      env.push_back({b.name, "", id});
    }
    binder_ids_[owner] = ids;
    return ids;
  }

  int known_at(const TypeName& t, Pos p) {
    if (!sig_.has_type(t)) throw SyntaxError(p, "unknown type " + t);
    return known(t);
  }

  static const Var* lookup(const std::vector<Var>& env, const std::string& n) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->surface == n) return &*it;
    return nullptr;
  }

  const FunInfo* fun(const std::string& n) const {
    auto it = prog_.funs.find(n);
    return it == prog_.funs.end() ? nullptr : &it->second;
  }

  std::vector<int> single(const SPtr& e, std::vector<Var>& env, const char* what) {
    auto ids = infer(e, env);
    if (ids.size() != 1)
      throw SyntaxError(e->pos, std::string(what) + " must have width 1, got " + std::to_string(ids.size()));
    return ids;
  }

  std::vector<int> infer(const SPtr& e, std::vector<Var>& env) {
    auto ids = infer_node(e, env);
    node_ids_[e.get()] = ids;
    return ids;
  }

  std::vector<int> infer_call(const SPtr& e, std::vector<Var>& env) {
    const std::string& n = e->name;
    std::size_t argc = e->args.size();
    if (!lookup(env, n)) {
      std::vector<const Symbol*> cands;
      for (auto* s : sig_.ctors_named(n))
        if (s->args.size() == argc) cands.push_back(s);
      if (!cands.empty()) {
        std::vector<int> args;
        for (auto& a : e->args) args.push_back(single(a, env, "constructor argument")[0]);
        int res = fresh();
        ctors_.push_back({e.get(), cands, args, res});
        kind_[e.get()] = K::Ctor;
        return {res};
      }
      if (const FunInfo* f = fun(n)) {
        if (f->params.size() != argc)
          throw SyntaxError(e->pos, n + " expects " + std::to_string(f->params.size()) + " arguments");
        for (std::size_t i = 0; i < argc; ++i)
          unify(single(e->args[i], env, "function argument")[0], known(f->param_types[i]), e->args[i]->pos);
        kind_[e.get()] = K::Fun;
        std::vector<int> r;
        for (auto& t : f->result) r.push_back(known(t));
        return r;
      }
      for (int k = 0; k < 2; ++k)
        if (n == kPi[k] && argc == 1) {
          auto ids = infer(e->args[0], env);
          if (ids.size() != 2) throw SyntaxError(e->pos, n + " needs an argument of width 2");
          kind_[e.get()] = K::Proj;
          return {ids[k]};
        }
      if (!sig_.ctors_named(n).empty())
        throw SyntaxError(e->pos, "constructor " + n + " applied to " + std::to_string(argc) + " arguments");
    }
    throw SyntaxError(e->pos, "unknown function or constructor '" + n + "'");
  }

  std::vector<int> infer_node(const SPtr& e, std::vector<Var>& env) {
    switch (e->kind) {
      case SExpr::Ident: {
        if (auto* v = lookup(env, e->name)) {
          kind_[e.get()] = K::Var;
          return {v->id};
        }
        std::vector<const Symbol*> cands;
        for (auto* s : sig_.ctors_named(e->name))
          if (s->args.empty()) cands.push_back(s);
        if (!cands.empty()) {
          int res = fresh();
          ctors_.push_back({e.get(), cands, {}, res});
          kind_[e.get()] = K::Ctor;
          return {res};
        }
        if (const FunInfo* f = fun(e->name); f && f->params.empty()) {
          kind_[e.get()] = K::Fun;
          std::vector<int> r;
          for (auto& t : f->result) r.push_back(known(t));
          return r;
        }
        throw SyntaxError(e->pos, "unknown identifier '" + e->name + "'");
      }
      case SExpr::Num: {
        std::vector<TypeName> cands;
        for (auto& t : sig_.datatype_order()) {
          const Symbol* z = sig_.ctor(t, "0");
          const Symbol* s = sig_.ctor(t, "S");
          if (z && z->args.empty() && (e->num == 0 || (s && s->args == TypeSeq{t}))) cands.push_back(t);
        }
        if (cands.empty()) throw SyntaxError(e->pos, "no datatype has constructors 0 and S for numerals");
        int res = fresh();
        nums_.push_back({e.get(), cands, res});
        return {res};
      }
      case SExpr::Str:
        return {known(Signature::kString)};
      case SExpr::Call:
        return infer_call(e, env);
      case SExpr::Tuple: {
        std::vector<int> r;
        for (auto& a : e->args) {
          auto ids = infer(a, env);
          r.insert(r.end(), ids.begin(), ids.end());
        }
        return r;
      }
      case SExpr::Lambda:
        throw SyntaxError(e->pos, "an abstraction may only appear before '@', in cy or in fold");
      case SExpr::Comp: {
        const SPtr& lam = e->args[0];
        auto arg = infer(e->args[1], env);
        if (lam->kind == SExpr::Ident && (lam->name == kPi[0] || lam->name == kPi[1]) &&
            !lookup(env, lam->name) && !fun(lam->name)) {
          if (arg.size() != 2) throw SyntaxError(e->pos, lam->name + " needs an argument of width 2");
          kind_[e.get()] = K::Proj;
          return {arg[lam->name == kPi[0] ? 0 : 1]};
        }
        if (lam->kind != SExpr::Lambda)
          throw SyntaxError(lam->pos, "left side of '@' must be an abstraction (x, y. t)");
        std::size_t mark = env.size();
        auto bs = bind(lam->binders, lam.get(), env);
        auto body = infer(lam->args[0], env);
        env.resize(mark);
        unify_all(bs, arg, e->pos, "'@'");
        return body;
      }
      case SExpr::Cy: {
        std::size_t mark = env.size();
        auto bs = bind(e->binders, e.get(), env);
        auto body = infer(e->args[0], env);
        env.resize(mark);
        unify_all(bs, body, e->pos, "cy");
        return body;
      }
      case SExpr::Annot: {
        auto ids = infer(e->args[0], env);
        std::vector<std::string> ts;
        std::stringstream ss(e->name);
        for (std::string t; std::getline(ss, t, ',');) ts.push_back(t);
        std::vector<int> want;
        for (auto& t : ts) want.push_back(known_at(t, e->pos));
        unify_all(ids, want, e->pos, "type annotation");
        return ids;
      }
      case SExpr::Fold:
        return infer_fold(e, env);
    }
    return {};
  }

  std::vector<int> infer_fold(const SPtr& e, std::vector<Var>& env) {
    FoldC f;
    f.node = e.get();
    f.src = fresh();
    std::size_t target_w = 0;
    bool have_w = false;
    for (std::size_t i = 0; i < e->fold_cases; ++i) {
      const SPtr& c = e->args[i];
      std::size_t mark = env.size();
      std::vector<int> bs;
      const SPtr* body = &c;
      if (c->kind == SExpr::Lambda) {
        bs = bind(c->binders, c.get(), env);
        body = &c->args[0];
      }
      auto ids = infer(*body, env);
      env.resize(mark);
      if (have_w && ids.size() != target_w)
        throw SyntaxError(c->pos, "structure terms of a fold must have equal width");
      target_w = ids.size();
      have_w = true;
      f.case_binders.push_back(bs);
      f.case_bodies.push_back(ids);
    }
    if (!have_w) throw SyntaxError(e->pos, "fold needs structure terms");
    f.target = fresh_n(target_w);
    std::size_t width;
    const SPtr& st = e->args[e->fold_cases];
    if (e->fold_bound) {
      std::size_t mark = env.size();
      auto ys = bind(e->binders, e.get(), env);
      auto body = infer(st, env);
      env.resize(mark);
      for (int y : ys) unify(y, f.src, e->pos);
      for (int b : body) unify(b, f.src, st->pos);
      width = body.size();
      std::size_t np = e->args.size() - e->fold_cases - 1;
      if (np != ys.size())
        throw SyntaxError(e->pos, "fold needs one parameter per bound variable");
      for (std::size_t i = 0; i < np; ++i) {
        const SPtr& p = e->args[e->fold_cases + 1 + i];
        unify_all(infer(p, env), f.target, p->pos, "fold parameter");
      }
    } else {
      auto body = infer(st, env);
      for (int b : body) unify(b, f.src, st->pos);
      width = body.size();
    }
    folds_.push_back(f);
    std::vector<int> r;
    for (std::size_t i = 0; i < width; ++i) r.insert(r.end(), f.target.begin(), f.target.end());
    return r;
  }

  // ---- pass 2: terms ----
  std::vector<Binder> binders_of(const SExpr* owner, const std::vector<SBinder>& bs) {
    auto& ids = binder_ids_.at(owner);
    std::vector<Binder> r;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (val(ids[i]).empty())
        throw SyntaxError(owner->pos, "cannot determine the type of " + bs[i].name);
      r.push_back({bs[i].name, val(ids[i])});
    }
    return r;
  }

  // Push binders into env with fresh internal names.
  std::vector<std::string> enter(const SExpr* owner, const std::vector<SBinder>& bs, std::vector<Var>& env,
                                 std::vector<Binder>& out) {
    out = binders_of(owner, bs);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      names.push_back(fresh_name(bs[i].name));
      env.push_back({bs[i].name, names.back(), binder_ids_.at(owner)[i]});
    }
    return names;
  }

  Term build(const SPtr& e, std::vector<Var>& env) {
    Pos p = e->pos;
    switch (e->kind) {
      case SExpr::Ident:
      case SExpr::Call: {
        K k = kind_.at(e.get());
        if (k == K::Var) {
          const Var* v = lookup(env, e->name);
          return fvar(v->internal, val(v->id));
        }
        if (k == K::Ctor) {
          std::vector<Term> args;
          for (auto& a : e->args) args.push_back(build(a, env));
          return app(chosen_.at(e.get()), args);
        }
        if (k == K::Proj) {
          Term arg = build(e->args[0], env);
          return project(arg, e->name == kPi[0] ? 0 : 1, node_ids_.at(e->args[0].get()), p);
        }
        const FunInfo* f = fun(e->name);
        std::map<std::string, Term> sub;
        for (std::size_t i = 0; i < e->args.size(); ++i) sub[f->params[i]] = build(e->args[i], env);
        return sub.empty() ? f->body : subst_vars(f->body, sub);
      }
      case SExpr::Num: {
        const TypeName& t = num_type_.at(e.get());
        Term r = app(sig_.ctor(t, "0"), {});
        for (long i = 0; i < e->num; ++i) r = app(sig_.ctor(t, "S"), {r});
        return r;
      }
      case SExpr::Str:
        return lit(e->name, Signature::kString);
      case SExpr::Tuple: {
        std::vector<Term> items;
        for (auto& a : e->args) items.push_back(build(a, env));
        return tuple(items);
      }
      case SExpr::Lambda:
        throw SyntaxError(p, "unexpected abstraction");
      case SExpr::Comp: {
        if (kind_.count(e.get()) && kind_.at(e.get()) == K::Proj) {
          Term arg = build(e->args[1], env);
          return project(arg, e->args[0]->name == kPi[0] ? 0 : 1, node_ids_.at(e->args[1].get()), p);
        }
        Term arg = build(e->args[1], env);
        const SPtr& lam = e->args[0];
        std::size_t mark = env.size();
        std::vector<Binder> bs;
        auto names = enter(lam.get(), lam->binders, env, bs);
        Term body = build(lam->args[0], env);
        env.resize(mark);
        return comp(abs(bs, names, body), arg);
      }
      case SExpr::Cy: {
        std::size_t mark = env.size();
        std::vector<Binder> bs;
        auto names = enter(e.get(), e->binders, env, bs);
        Term body = build(e->args[0], env);
        env.resize(mark);
        return cy(bs, names, body);
      }
      case SExpr::Annot:
        return build(e->args[0], env);
      case SExpr::Fold:
        return build_fold(e, env);
    }
    throw SyntaxError(p, "unsupported term");
  }

  Term project(const Term& arg, int k, const std::vector<int>& ids, Pos p) {
    std::vector<Binder> bs{{"v", val(ids[0])}, {"w", val(ids[1])}};
    if (bs[0].type.empty() || bs[1].type.empty()) throw SyntaxError(p, "cannot type projection");
    std::vector<std::string> names{fresh_name("v"), fresh_name("w")};
    return comp(abs(bs, names, fvar(names[k], bs[k].type)), arg);
  }

  Term build_fold(const SPtr& e, std::vector<Var>& env) {
    std::vector<Term> args;
    TypeSeq target;
    // The first structure term's body carries the target type.
    for (std::size_t i = 0; i < e->fold_cases; ++i) {
      const SPtr& c = e->args[i];
      if (c->kind == SExpr::Lambda) {
        std::size_t mark = env.size();
        std::vector<Binder> bs;
        auto names = enter(c.get(), c->binders, env, bs);
        Term body = build(c->args[0], env);
        if (i == 0) target = resolve(node_ids_.at(c->args[0].get()), c->pos);
        env.resize(mark);
        args.push_back(abs(bs, names, body));
      } else {
        args.push_back(build(c, env));
        if (i == 0) target = resolve(node_ids_.at(c.get()), c->pos);
      }
    }
    const SPtr& st = e->args[e->fold_cases];
    TypeName src;
    if (e->fold_bound) {
      std::size_t mark = env.size();
      std::vector<Binder> bs;
      auto names = enter(e.get(), e->binders, env, bs);
      Term body = build(st, env);
      env.resize(mark);
      src = bs[0].type;
      args.push_back(abs(bs, names, body));
      for (std::size_t i = e->fold_cases + 1; i < e->args.size(); ++i) args.push_back(build(e->args[i], env));
    } else {
      Term s = build(st, env);
      auto ids = node_ids_.at(st.get());
      if (ids.empty()) throw SyntaxError(st->pos, "fold over an empty tuple needs a typed binder form");
      src = val(ids[0]);
      args.push_back(s);
    }
    return app(sig_.fold(src, target), args);
  }

  enum class K { Var, Ctor, Fun, Proj };

  Program& prog_;
  Signature& sig_;
  std::vector<int> parent_;
  std::vector<TypeName> value_;
  bool progress_ = false;
  std::vector<CtorC> ctors_;
  std::vector<NumC> nums_;
  std::vector<FoldC> folds_;
  std::map<const SExpr*, const Symbol*> chosen_;
  std::map<const SExpr*, TypeName> num_type_;
  std::set<const SExpr*> fold_done_;
  std::map<const SExpr*, std::vector<int>> binder_ids_;
  std::map<const SExpr*, std::vector<int>> node_ids_;
  std::map<const SExpr*, K> kind_;
};

SPtr mk(SExpr::Kind k, Pos p, const std::string& name = "") {
  auto e = std::make_shared<SExpr>();
  e->kind = k;
  e->pos = p;
  e->name = name;
  return e;
}

// Replace f(x) by `rec[x]` and reject any other use of f.
SPtr abstract_calls(const SPtr& e, const std::string& f, const std::map<std::string, std::string>& rec) {
  if ((e->kind == SExpr::Call || e->kind == SExpr::Ident) && e->name == f) {
    if (e->kind == SExpr::Call && e->args.size() == 1 && e->args[0]->kind == SExpr::Ident &&
        rec.count(e->args[0]->name))
      return mk(SExpr::Ident, e->pos, rec.at(e->args[0]->name));
    throw SyntaxError(e->pos, "recursive call of " + f + " must be applied to a direct recursive subterm");
  }
  auto c = std::make_shared<SExpr>(*e);
  for (auto& a : c->args) a = abstract_calls(a, f, rec);
  return c;
}

SPtr primrec_body(const FunDef& def, const Signature& sig, const TypeName& src, const TypeName& tgt) {
  const DatatypeDecl* d = sig.find_datatype(src);
  if (!d) throw SyntaxError(def.pos, "primitive recursion needs a datatype source, got " + src);
  const DatatypeDecl* bd = sig.find_datatype(tgt);
  std::map<std::string, const Equation*> by_ctor;
  for (auto& eq : def.cases) {
    const SPtr& l = eq.lhs;
    if (l->kind != SExpr::Call || l->args.size() != 1)
      throw SyntaxError(eq.pos, "equation must have the form " + def.name + "(pattern) = term");
    const SPtr& pat = l->args[0];
    std::string cname = pat->kind == SExpr::Num && pat->num == 0 ? "0" : pat->name;
    if (pat->kind != SExpr::Call && pat->kind != SExpr::Ident && !(pat->kind == SExpr::Num && pat->num == 0))
      throw SyntaxError(pat->pos, "pattern must be a constructor applied to variables");
    if (!sig.ctor(src, cname)) throw SyntaxError(pat->pos, cname + " is not a constructor of " + src);
    if (by_ctor.count(cname)) throw SyntaxError(eq.pos, "duplicate equation for " + cname);
    by_ctor[cname] = &eq;
  }
  auto fold = mk(SExpr::Fold, def.pos);
  int counter = 0;
  for (auto* ctor : d->ctors) {
    auto lam = mk(SExpr::Lambda, def.pos);
    std::vector<std::string> argn;
    auto it = by_ctor.find(ctor->name);
    SPtr rhs;
    std::map<std::string, std::string> rec;
    if (it != by_ctor.end()) {
      const SPtr& pat = it->second->lhs->args[0];
      if (pat->args.size() != ctor->args.size())
        throw SyntaxError(pat->pos, ctor->name + " takes " + std::to_string(ctor->args.size()) + " arguments");
      std::set<std::string> seen;
      for (auto& a : pat->args) {
        if (a->kind != SExpr::Ident || !seen.insert(a->name).second)
          throw SyntaxError(a->pos, "pattern arguments must be distinct variables");
        argn.push_back(a->name);
      }
      rhs = it->second->rhs;
    } else {
      for (std::size_t i = 0; i < ctor->args.size(); ++i) argn.push_back("w%" + std::to_string(++counter));
    }
    for (std::size_t i = 0; i < ctor->args.size(); ++i)
      if (ctor->args[i] != src) lam->binders.push_back({argn[i], ""});
    for (std::size_t i = 0; i < ctor->args.size(); ++i)
      if (ctor->args[i] == src) {
        std::string v = "v%" + std::to_string(++counter);
        rec[argn[i]] = v;
        lam->binders.push_back({v, ""});
        lam->binders.push_back({argn[i], ""});
      }
    if (!rhs) {
      if (bd && bd->has_axbr() && ctor->role == BrRole::Unit) {
        rhs = mk(SExpr::Ident, def.pos, bd->br_unit->name);
      } else if (bd && bd->has_axbr() && ctor->role == BrRole::Branch) {
        rhs = mk(SExpr::Call, def.pos, bd->br_branch->name);
        rhs->infix = bd->br_branch->infix;
        for (auto& a : argn) rhs->args.push_back(mk(SExpr::Ident, def.pos, rec.at(a)));
      } else {
        throw SyntaxError(def.pos, "missing equation for " + def.name + "(" + ctor->name + "(...))");
      }
    } else {
      rhs = abstract_calls(rhs, def.name, rec);
    }
    auto rebuilt = mk(ctor->args.empty() ? SExpr::Ident : SExpr::Call, def.pos, ctor->name);
    rebuilt->infix = ctor->infix;
    for (auto& a : argn) rebuilt->args.push_back(mk(SExpr::Ident, def.pos, a));
    auto pair = mk(SExpr::Tuple, def.pos);
    pair->args = {rhs, rebuilt};
    // Annotate the rebuilt constructor so overloaded names resolve to the source type.
    auto annot = mk(SExpr::Annot, def.pos, src);
    annot->args = {rebuilt};
    pair->args[1] = annot;
    if (lam->binders.empty()) {
      fold->args.push_back(pair);
    } else {
      lam->args = {pair};
      fold->args.push_back(lam);
    }
  }
  fold->fold_cases = fold->args.size();
  fold->args.push_back(mk(SExpr::Ident, def.pos, "t%arg"));
  auto proj = mk(SExpr::Call, def.pos, "pi1");
  proj->args = {fold};
  return proj;
}

}  // namespace

FunInfo elaborate_fun(const FunDef& def, const FunSig* fsig, Program& prog) {
  FunInfo info;
  info.name = def.name;
  info.kind = def.kind;
  Signature& sig = *prog.sig;
  auto check_type = [&](const TypeName& t) {
    if (!sig.has_type(t)) throw SyntaxError(def.pos, "unknown type " + t);
    return t;
  };
  std::vector<std::string> surface;
  if (def.kind == FunDef::PrimRec) {
    if (def.params.size() != 1 || def.result.size() != 1)
      throw SyntaxError(def.pos, "primitive recursion is defined for one argument and one result type");
    surface = {"t%arg"};
    info.param_types = {check_type(def.params[0].type)};
    info.result = {check_type(def.result[0])};
  } else {
    if (fsig && fsig->params.size() != def.params.size())
      throw SyntaxError(def.pos, def.name + " has " + std::to_string(def.params.size()) +
                                    " parameters but its signature lists " +
                                    std::to_string(fsig->params.size()));
    for (std::size_t i = 0; i < def.params.size(); ++i) {
      surface.push_back(def.params[i].name);
      TypeName t = def.params[i].type;
      if (fsig) {
        if (!t.empty() && t != fsig->params[i])
          throw SyntaxError(def.pos, "parameter " + def.params[i].name + " annotated " + t +
                                         " but the signature says " + fsig->params[i]);
        t = fsig->params[i];
      }
      if (t.empty())
        throw SyntaxError(def.pos, "parameter " + def.params[i].name + " of " + def.name +
                                       " needs a type (signature line or annotation)");
      info.param_types.push_back(check_type(t));
    }
    if (fsig) info.result = fsig->result;
    if (!def.result.empty()) {
      if (fsig && def.result != fsig->result)
        throw SyntaxError(def.pos, "result annotation disagrees with the signature of " + def.name);
      info.result = def.result;
    }
    for (auto& t : info.result) check_type(t);
  }
  std::vector<std::tuple<std::string, std::string, TypeName>> free;
  for (std::size_t i = 0; i < surface.size(); ++i) {
    info.params.push_back(fresh_name("p"));
    free.emplace_back(surface[i], info.params.back(), info.param_types[i]);
  }
  SPtr body = def.body;
  if (def.kind == FunDef::PrimRec) {
    body = primrec_body(def, sig, info.param_types[0], info.result[0]);
    info.result = {info.result[0]};
  }
  Elab el(prog);
  std::optional<TypeSeq> expected;
  if (!info.result.empty() || (fsig && fsig->result.empty())) expected = info.result;
  TypeSeq got;
  info.body = el.run(body, free, expected, &got);
  info.result = got;
  return info;
}

Term Program::term(const SPtr& e, const std::optional<TypeSeq>& expected,
                   const std::map<std::string, TypeName>& vars) const {
  std::vector<std::tuple<std::string, std::string, TypeName>> free;
  for (auto& [n, t] : vars) free.emplace_back(n, n, t);
  Elab el(const_cast<Program&>(*this));
  return el.run(e, free, expected, nullptr);
}

Term Program::term(const std::string& text, const std::optional<TypeSeq>& expected,
                   const std::map<std::string, TypeName>& vars) const {
  return term(parse_term(text), expected, vars);
}

namespace {

// Collect pattern variables of a spec equation (identifiers that are neither
// constructors nor functions).
void pattern_vars(const SPtr& e, const Program& prog, std::vector<std::string>& out) {
  if (e->kind == SExpr::Ident && prog.sig->ctors_named(e->name).empty() && !prog.funs.count(e->name)) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
    return;
  }
  for (auto& a : e->args) pattern_vars(a, prog, out);
}

// Infer types of pattern variables from the constructor argument positions.
void pattern_types(const SPtr& pat, const TypeName& type, const Program& prog,
                   std::map<std::string, TypeName>& out) {
  if (pat->kind == SExpr::Ident) {
    if (!prog.sig->ctors_named(pat->name).empty()) return;
    auto [it, fresh] = out.emplace(pat->name, type);
    if (!fresh && it->second != type) throw SyntaxError(pat->pos, "pattern variable used at two types");
    return;
  }
  if (pat->kind == SExpr::Call) {
    const Symbol* c = prog.sig->ctor(type, pat->name);
    if (!c || c->args.size() != pat->args.size())
      throw SyntaxError(pat->pos, pat->name + " is not a constructor of " + type);
    for (std::size_t i = 0; i < c->args.size(); ++i) pattern_types(pat->args[i], c->args[i], prog, out);
  }
}

}  // namespace

Program elaborate(const SourceFile& file) {
  Program prog;
  prog.sig = elaborate_signature(file);
  std::map<std::string, const FunSig*> sigs;
  for (auto& s : file.sigs) {
    for (auto& t : s.params)
      if (!prog.sig->has_type(t)) throw SyntaxError(s.pos, "unknown type " + t);
    for (auto& t : s.result)
      if (!prog.sig->has_type(t)) throw SyntaxError(s.pos, "unknown type " + t);
    sigs[s.name] = &s;
  }
  std::vector<const SpecDef*> specs;
  for (auto& item : file.items) {
    switch (item.kind) {
      case Item::Ctype:
      case Item::Sig:
        break;
      case Item::Fun: {
        const FunDef& d = file.funs[item.index];
        auto it = sigs.find(d.name);
        FunInfo info = elaborate_fun(d, it == sigs.end() ? nullptr : it->second, prog);
        prog.fun_order.push_back(d.name);
        prog.funs[d.name] = info;
        break;
      }
      case Item::Spec:
        specs.push_back(&file.specs[item.index]);
        break;
      case Item::Dir: {
        const Directive& d = file.directives[item.index];
        ElabDirective ed;
        ed.kind = d.kind;
        ed.text = d.text;
        ed.pos = d.pos;
        if (d.kind == Directive::GsCheck) {
          prog.directives.push_back(ed);
          break;
        }
        Elab el(prog);
        ed.lhs = el.run(d.lhs, {}, std::nullopt, &ed.type);
        if (d.rhs) {
          Elab er(prog);
          ed.rhs = er.run(d.rhs, {}, ed.type, nullptr);
        }
        prog.directives.push_back(ed);
        break;
      }
    }
  }
  // Specs are checked after all funs exist; they may mention later helpers.
  for (auto* s : specs) {
    auto sit = sigs.find(s->name);
    auto fit = prog.funs.find(s->name);
    if (fit == prog.funs.end()) throw SyntaxError(s->pos, "spec for undefined function " + s->name);
    const FunInfo& f = fit->second;
    (void)sit;
    for (auto& eq : s->equations) {
      if (eq.lhs->kind != SExpr::Call || eq.lhs->args.size() != f.params.size())
        throw SyntaxError(eq.pos, "spec equation must apply " + s->name + " to its arguments");
      std::map<std::string, TypeName> vars;
      for (std::size_t i = 0; i < f.params.size(); ++i)
        pattern_types(eq.lhs->args[i], f.param_types[i], prog, vars);
      std::vector<std::string> rvars;
      pattern_vars(eq.rhs, prog, rvars);
      for (auto& v : rvars)
        if (!vars.count(v)) throw SyntaxError(eq.pos, "variable " + v + " is not bound by the pattern");
      SpecEquation se;
      se.fun = s->name;
      se.vars = vars;
      const SPtr& pat = eq.lhs->args[0];
      se.ctor = pat->kind == SExpr::Num ? "0" : pat->name;
      se.lhs = prog.term(eq.lhs, f.result, vars);
      se.rhs = prog.term(eq.rhs, f.result, vars);
      prog.specs.push_back(se);
    }
  }
  return prog;
}

Program load_program(const std::string& source) { return elaborate(parse(source)); }

Program load_file(const std::string& path) { return load_program(read_file(path)); }

}  // namespace cyc
