#include "cycdt/typing.hpp"

#include "cycdt/print.hpp"
#include "cycdt/rules.hpp"
#include "cycdt/signature.hpp"

namespace cyc {

namespace {

class Checker {
 public:
  Checker(const MetaContext& m, VarContext v, bool annotated)
      : meta_(m), vars_(std::move(v)), annotated_(annotated) {}

  TypeSeq go(const Term& t) {
    switch (t->tag) {
      case Tag::FVar: {
        auto it = vars_.find(t->name);
        if (it != vars_.end()) {
          if (!t->type.empty() && t->type != it->second)
            fail("variable " + t->name + " annotated " + t->type + " but bound at " + it->second);
          return {it->second};
        }
        if (annotated_ && !t->type.empty()) return {t->type};
        fail("unbound variable " + t->name);
      }
      case Tag::BVar:
        fail("dangling bound variable");
      case Tag::Lit:
        return {t->type};
      case Tag::Abs:
        fail("abstraction outside a binding argument position");
      case Tag::Meta: {
        auto it = meta_.find(t->name);
        if (it == meta_.end()) fail("unknown metavariable " + t->name);
        TypeSeq got;
        for (auto& a : t->args) {
          auto ts = go(a);
          got.insert(got.end(), ts.begin(), ts.end());
        }
        if (got != it->second.binders)
          fail("metavariable " + t->name + " expects arguments " + show_types(it->second.binders) +
               " but got " + show_types(got));
        if (t->width != static_cast<int>(it->second.result.size()))
          fail("metavariable " + t->name + " has inconsistent width");
        return it->second.result;
      }
      case Tag::App:
        return app(t);
    }
    return {};
  }

 private:
  [[noreturn]] void fail(const std::string& m) { throw TypeError(m); }

  // Type the body of an argument position with the given binder types.
  TypeSeq under(const Term& a, const TypeSeq& binder_types) {
    if (binder_types.empty()) {
      if (a->tag == Tag::Abs) fail("unexpected abstraction");
      return go(a);
    }
    if (a->tag != Tag::Abs) fail("expected an abstraction over " + show_types(binder_types));
    if (a->binders.size() != binder_types.size()) fail("binder count mismatch");
    for (std::size_t i = 0; i < binder_types.size(); ++i)
      if (a->binders[i].type != binder_types[i])
        fail("binder typed " + a->binders[i].type + " where " + binder_types[i] + " is required");
    return abs_body(a);
  }

  TypeSeq abs_body(const Term& a) {
    auto names = fresh_names(a->binders);
    VarContext saved = vars_;
    for (std::size_t i = 0; i < names.size(); ++i) vars_[names[i]] = a->binders[i].type;
    TypeSeq r = go(open_names(a, names));
    vars_ = std::move(saved);
    return r;
  }

  TypeSeq binder_types(const Term& a) {
    TypeSeq r;
    for (auto& b : a->binders) {
      if (b.type.empty()) fail("untyped binder " + b.hint);
      r.push_back(b.type);
    }
    return r;
  }

  void expect(const TypeSeq& got, const TypeSeq& want, const std::string& where) {
    if (got != want) fail(where + ": expected " + show_types(want) + " but got " + show_types(got));
  }

  TypeSeq app(const Term& t) {
    const Symbol* s = t->sym;
    switch (s->kind) {
      case SymKind::Unit:
        return {};
      case SymKind::Tuple: {
        TypeSeq r;
        for (auto& a : t->args) {
          auto ts = go(a);
          r.insert(r.end(), ts.begin(), ts.end());
        }
        return r;
      }
      case SymKind::Ctor: {
        if (t->args.size() != s->args.size()) fail("constructor " + s->name + " arity mismatch");
        for (std::size_t i = 0; i < s->args.size(); ++i)
          expect(under(t->args[i], {}), {s->args[i]}, "argument " + std::to_string(i + 1) + " of " + s->name);
        return {s->result};
      }
      case SymKind::Cy: {
        const Term& a = t->args[0];
        if (a->tag != Tag::Abs) fail("cy needs an abstraction");
        TypeSeq bs = binder_types(a);
        expect(abs_body(a), bs, "body of cy");
        return bs;
      }
      case SymKind::Comp: {
        const Term& a = t->args[0];
        if (a->tag != Tag::Abs) fail("left side of @ must be an abstraction");
        TypeSeq bs = binder_types(a);
        TypeSeq body = abs_body(a);
        expect(go(t->args[1]), bs, "right side of @");
        return body;
      }
      case SymKind::Fold: {
        std::size_t m = s->cases.size();
        if (t->args.size() < m + 1) fail("fold has too few arguments");
        for (std::size_t i = 0; i < m; ++i)
          expect(under(t->args[i], Signature::case_binders(s->cases[i], s->target)), s->target,
                 "structure term for " + s->cases[i]->name);
        const Term& st = t->args[m];
        std::size_t k = t->args.size() - m - 1;
        TypeSeq body;
        if (st->tag == Tag::Abs) {
          TypeSeq ys(st->binders.size(), s->source);
          if (ys.size() != k) fail("fold needs one parameter per structure binder");
          body = under(st, ys);
        } else {
          if (k != 0) fail("fold parameters given without structure binders");
          body = go(st);
        }
        for (auto& b : body)
          if (b != s->source) fail("fold over " + s->source + " applied to a term of type " + show_types(body));
        for (std::size_t i = 0; i < k; ++i) expect(go(t->args[m + 1 + i]), s->target, "fold parameter");
        TypeSeq r;
        for (std::size_t i = 0; i < body.size(); ++i) r.insert(r.end(), s->target.begin(), s->target.end());
        return r;
      }
    }
    return {};
  }

  const MetaContext& meta_;
  VarContext vars_;
  bool annotated_;
};

}  // namespace

TypeSeq infer(const MetaContext& meta, const VarContext& vars, const Term& t) {
  return Checker(meta, vars, false).go(t);
}

TypeSeq type_of(const Term& t, const MetaContext& meta) { return Checker(meta, {}, true).go(t); }

TypeSeq check_rule(const RewriteRule& r) {
  for (auto& m : metavars(r.rhs))
    if (!metavars(r.lhs).count(m)) throw TypeError("rule " + r.name + ": metavariable " + m + " only on the right");
  TypeSeq l, rt;
  try {
    l = infer(r.meta, {}, r.lhs);
  } catch (const TypeError& e) {
    throw TypeError("rule " + r.name + " lhs: " + e.what());
  }
  try {
    rt = infer(r.meta, {}, r.rhs);
  } catch (const TypeError& e) {
    throw TypeError("rule " + r.name + " rhs: " + e.what());
  }
  if (l != rt)
    throw TypeError("rule " + r.name + ": sides typed " + show_types(l) + " and " + show_types(rt));
  return l;
}

}  // namespace cyc
