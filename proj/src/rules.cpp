#include "cycdt/rules.hpp"

#include <algorithm>
#include <sstream>

namespace cyc {

// ---------------------------------------------------------------- matching

namespace {

class Matcher {
 public:
  MetaAssignment theta;

  bool go(const Term& p, const Term& t) {
    if (p->tag == Tag::Meta) return meta(p, t);
    if (p->tag != t->tag) return false;
    switch (p->tag) {
      case Tag::FVar:
        return p->name == t->name;
      case Tag::BVar:
        return p->depth == t->depth && p->slot == t->slot;
      case Tag::Lit:
        return p->name == t->name && p->type == t->type;
      case Tag::App:
        if (p->sym != t->sym || p->args.size() != t->args.size()) return false;
        for (std::size_t i = 0; i < p->args.size(); ++i)
          if (!go(p->args[i], t->args[i])) return false;
        return true;
      case Tag::Abs: {
        if (p->binders.size() != t->binders.size()) return false;
        for (std::size_t i = 0; i < p->binders.size(); ++i)
          if (p->binders[i].type != t->binders[i].type) return false;
        auto names = fresh_names(p->binders);
        for (std::size_t i = 0; i < names.size(); ++i) locals_[names[i]] = t->binders[i];
        return go(open_names(p, names), open_names(t, names));
      }
      case Tag::Meta:
        break;
    }
    return false;
  }

 private:
  bool meta(const Term& p, const Term& t) {
    if (p->width != t->width) return false;
    std::vector<std::string> names;
    std::vector<Binder> bs;
    for (auto& a : p->args) {
      if (a->tag != Tag::FVar || !locals_.count(a->name)) return false;
      if (std::find(names.begin(), names.end(), a->name) != names.end()) return false;
      names.push_back(a->name);
      bs.push_back(locals_.at(a->name));
    }
    for (auto& v : free_vars(t))
      if (locals_.count(v) && std::find(names.begin(), names.end(), v) == names.end()) return false;
    MetaBinding b = meta_binding(bs, names, t);
    auto it = theta.find(p->name);
    if (it != theta.end()) return alpha_eq(it->second.body, b.body);
    theta.emplace(p->name, std::move(b));
    return true;
  }

  std::map<std::string, Binder> locals_;
};

}  // namespace

std::optional<MetaAssignment> match(const Term& lhs, const Term& t) {
  Matcher m;
  if (!m.go(lhs, t)) return std::nullopt;
  return m.theta;
}

// ---------------------------------------------------------------- keys

const char* family_name(Family f) {
  switch (f) {
    case Family::R1: return "1r";
    case Family::R2: return "2r";
    case Family::R3: return "3r";
    case Family::R4: return "4r";
    case Family::R5: return "5r";
    case Family::R7: return "7r";
    case Family::R10: return "10r";
    case Family::R11: return "11r";
    case Family::R12: return "12r";
    case Family::R13: return "13r";
    case Family::R14: return "14r";
    case Family::R15: return "15r";
    case Family::R16: return "16r";
  }
  return "?";
}

namespace {

bool is_foldr(Family f) {
  return f == Family::R1 || f == Family::R2 || f == Family::R3 || f == Family::R4 || f == Family::R5 ||
         f == Family::R7;
}

std::string join_types(const TypeSeq& ts) {
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? "," : "") + ts[i];
  return s;
}

}  // namespace

std::string RuleKey::str() const {
  std::ostringstream o;
  o << family_name(family);
  if (fold) o << " " << fold->name << " k=" << k;
  if (ctor) o << " d=" << ctor->name;
  if (family == Family::R1) o << " i=" << i;
  if (family == Family::R4) o << " n=" << i;
  if (!widths.empty()) {
    o << " w=";
    for (std::size_t j = 0; j < widths.size(); ++j) o << (j ? "," : "") << widths[j];
  }
  if (!types.empty()) o << " [" << join_types(types) << "]";
  if (family == Family::R7) o << " -> (" << join_types(result) << ")";
  return o.str();
}

// ---------------------------------------------------------------- builders

namespace {

struct Builder {
  MetaContext meta;

  Term mv(const std::string& name, const std::vector<Term>& args, const TypeSeq& binders,
          const TypeSeq& result) {
    meta[name] = {binders, result};
    return cyc::meta(name, args, static_cast<int>(result.size()));
  }
};

std::vector<Binder> binders_of(const TypeSeq& ts, const std::string& hint) {
  std::vector<Binder> r;
  for (auto& t : ts) r.push_back({hint, t});
  return r;
}

std::vector<std::string> names_for(std::size_t n, const std::string& hint) {
  std::vector<std::string> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(fresh_name(hint));
  return r;
}

std::vector<Term> fvars(const std::vector<std::string>& names, const TypeSeq& types) {
  std::vector<Term> r;
  for (std::size_t i = 0; i < names.size(); ++i) r.push_back(fvar(names[i], types[i]));
  return r;
}

TypeSeq repeat(const TypeSeq& ts, std::size_t n) {
  TypeSeq r;
  for (std::size_t i = 0; i < n; ++i) r.insert(r.end(), ts.begin(), ts.end());
  return r;
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Pieces shared by the fold rules: structure-term metavariables e_i and
// parameter metavariables p_j.
struct FoldPieces {
  std::vector<Term> e;
  std::vector<Term> p;
};

FoldPieces fold_pieces(Builder& b, const Symbol* F, int k) {
  FoldPieces fp;
  for (std::size_t i = 0; i < F->cases.size(); ++i) {
    TypeSeq bi = Signature::case_binders(F->cases[i], F->target);
    std::string name = "e" + std::to_string(i + 1);
    if (bi.empty()) {
      fp.e.push_back(b.mv(name, {}, {}, F->target));
    } else {
      auto xs = names_for(bi.size(), "x");
      fp.e.push_back(abs(binders_of(bi, "x"), xs, b.mv(name, fvars(xs, bi), bi, F->target)));
    }
  }
  for (int j = 0; j < k; ++j) fp.p.push_back(b.mv("p" + std::to_string(j + 1), {}, {}, F->target));
  return fp;
}

Term structure(const Symbol* F, const std::vector<std::string>& ys, const Term& body) {
  if (ys.empty()) return body;
  return abs(binders_of(TypeSeq(ys.size(), F->source), "y"), ys, body);
}

Term fold_app(const Symbol* F, const FoldPieces& fp, const Term& st, const std::vector<Term>& params) {
  std::vector<Term> args = fp.e;
  args.push_back(st);
  args.insert(args.end(), params.begin(), params.end());
  return app(F, args);
}

}  // namespace

RuleSet::RuleSet(std::shared_ptr<Signature> sig, std::vector<Family> families)
    : sig_(std::move(sig)), families_(std::move(families)) {}

RuleSet RuleSet::foldr(std::shared_ptr<Signature> sig) {
  return RuleSet(std::move(sig), {Family::R1, Family::R2, Family::R3, Family::R4, Family::R5, Family::R7});
}

RuleSet RuleSet::simp(std::shared_ptr<Signature> sig) {
  return RuleSet(std::move(sig), {Family::R13, Family::R11, Family::R12, Family::R14, Family::R15,
                                  Family::R16, Family::R10});
}

RuleSet RuleSet::foldr_simp(std::shared_ptr<Signature> sig) {
  return RuleSet(std::move(sig), {Family::R1, Family::R2, Family::R3, Family::R4, Family::R5, Family::R7,
                                  Family::R13, Family::R11, Family::R12, Family::R14, Family::R15,
                                  Family::R16, Family::R10});
}

RewriteRule RuleSet::build(const RuleKey& key) const {
  Builder b;
  RewriteRule r;
  r.name = family_name(key.family);
  r.system = is_foldr(key.family) ? "FOLDr" : "SIMP";
  r.instance = key.str();
  const Symbol* F = key.fold;
  switch (key.family) {
    case Family::R1:
    case Family::R2:
    case Family::R3:
    case Family::R4:
    case Family::R5: {
      FoldPieces fp = fold_pieces(b, F, key.k);
      TypeSeq cs(static_cast<std::size_t>(key.k), F->source);
      auto ys = names_for(key.k, "y");
      auto yv = fvars(ys, cs);
      std::size_t bw = F->target.size();
      if (key.family == Family::R1) {
        r.lhs = fold_app(F, fp, structure(F, ys, yv[key.i]), fp.p);
        r.rhs = fp.p[key.i];
      } else if (key.family == Family::R2) {
        r.lhs = fold_app(F, fp, structure(F, ys, unit()), fp.p);
        r.rhs = unit();
      } else if (key.family == Family::R3) {
        std::vector<Term> comps, outs;
        for (std::size_t j = 0; j < key.widths.size(); ++j) {
          std::string s = "s" + std::to_string(j + 1);
          TypeSeq res(static_cast<std::size_t>(key.widths[j]), F->source);
          comps.push_back(b.mv(s, yv, cs, res));
          auto ys2 = names_for(key.k, "y");
          outs.push_back(fold_app(F, fp, structure(F, ys2, b.mv(s, fvars(ys2, cs), cs, res)), fp.p));
        }
        r.lhs = fold_app(F, fp, structure(F, ys, tuple(comps)), fp.p);
        r.rhs = tuple(outs);
      } else if (key.family == Family::R4) {
        std::size_t n = static_cast<std::size_t>(key.i);
        TypeSeq xt(n, F->source);
        TypeSeq all = concat(cs, xt);
        auto xs = names_for(n, "x");
        Term t = b.mv("t", concat(yv, fvars(xs, xt)), all, xt);
        r.lhs = fold_app(F, fp, structure(F, ys, cy(binders_of(xt, "x"), xs, t)), fp.p);
        auto ys2 = names_for(key.k, "y");
        auto xs2 = names_for(n, "x");
        auto yx = ys2;
        yx.insert(yx.end(), xs2.begin(), xs2.end());
        Term inner = abs(concat(binders_of(cs, "y"), binders_of(xt, "x")), yx,
                         b.mv("t", fvars(yx, all), all, xt));
        TypeSeq qt = repeat(F->target, n);
        if (bw == 0) {
          std::vector<Term> params = fp.p;
          for (std::size_t j = 0; j < n; ++j) params.push_back(unit());
          r.rhs = fold_app(F, fp, inner, params);
        } else {
          auto xp = names_for(n * bw, "x");
          auto xpv = fvars(xp, qt);
          std::vector<Term> params = fp.p;
          for (std::size_t j = 0; j < n; ++j)
            params.push_back(tuple(std::vector<Term>(xpv.begin() + j * bw, xpv.begin() + (j + 1) * bw)));
          r.rhs = cy(binders_of(qt, "x"), xp, fold_app(F, fp, inner, params));
        }
      } else {
        const Symbol* d = key.ctor;
        std::size_t ci = 0;
        while (F->cases[ci] != d) ++ci;
        std::vector<Term> args, eargs, recs;
        int na = 0, nt = 0;
        for (auto& a : d->args) {
          if (a != F->source) {
            Term m = b.mv("a" + std::to_string(++na), {}, {}, {a});
            args.push_back(m);
            eargs.push_back(m);
          } else {
            std::string tn = "t" + std::to_string(++nt);
            args.push_back(b.mv(tn, yv, cs, {F->source}));
            auto ys2 = names_for(key.k, "y");
            recs.push_back(
                fold_app(F, fp, structure(F, ys2, b.mv(tn, fvars(ys2, cs), cs, {F->source})), fp.p));
          }
        }
        eargs.insert(eargs.end(), recs.begin(), recs.end());
        r.lhs = fold_app(F, fp, structure(F, ys, app(d, args)), fp.p);
        TypeSeq bi = Signature::case_binders(d, F->target);
        r.rhs = b.mv("e" + std::to_string(ci + 1), eargs, bi, F->target);
      }
      break;
    }
    case Family::R7: {
      const TypeSeq& ts = key.types;
      auto xs = names_for(ts.size(), "x");
      Term lam = abs(binders_of(ts, "x"), xs, b.mv("t", fvars(xs, ts), ts, key.result));
      std::vector<Term> ss;
      for (std::size_t j = 0; j < ts.size(); ++j)
        ss.push_back(b.mv(ts.size() == 1 ? "s" : "s" + std::to_string(j + 1), {}, {}, {ts[j]}));
      r.lhs = comp(lam, ts.size() == 1 ? ss[0] : tuple(ss));
      r.rhs = b.mv("t", ss, ts, key.result);
      break;
    }
    case Family::R10: {
      const TypeSeq& ts = key.types;
      std::size_t m = static_cast<std::size_t>(key.widths[0]);
      TypeSeq tx(ts.begin(), ts.begin() + m), ty(ts.begin() + m, ts.end());
      // t[x,y] : tx and s[x,y] = <s2[x,y], ..., sr[x,y]> : ty
      auto t_app = [&](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        return b.mv("t", concat(fvars(x, tx), fvars(y, ty)), ts, tx);
      };
      auto s_app = [&](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        std::vector<Term> comps;
        std::size_t off = m;
        for (std::size_t j = 1; j < key.widths.size(); ++j) {
          std::size_t w = static_cast<std::size_t>(key.widths[j]);
          TypeSeq res(ts.begin() + off, ts.begin() + off + w);
          comps.push_back(b.mv("s" + std::to_string(j + 1), concat(fvars(x, tx), fvars(y, ty)), ts, res));
          off += w;
        }
        return tuple(comps);
      };
      auto bx = binders_of(tx, "x");
      auto by = binders_of(ty, "y");
      auto fresh_x = [&] { return names_for(tx.size(), "x"); };
      auto fresh_y = [&] { return names_for(ty.size(), "y"); };
      {
        auto x = fresh_x(), y = fresh_y();
        auto xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        std::vector<Term> comps{t_app(x, y)};
        Term rest = s_app(x, y);
        if (is_app(rest, SymKind::Tuple))
          comps.insert(comps.end(), rest->args.begin(), rest->args.end());
        else
          comps.push_back(rest);
        r.lhs = cy(concat(bx, by), xy, tuple(comps));
      }
      Term A;
      {
        auto x1 = fresh_x(), y1 = fresh_y(), y2 = fresh_y();
        A = cy(bx, x1, comp(abs(by, y1, t_app(x1, y1)), cy(by, y2, s_app(x1, y2))));
      }
      Term B;
      {
        auto y3 = fresh_y(), x3 = fresh_x(), x4 = fresh_x(), y4 = fresh_y(), y5 = fresh_y();
        Term inner = cy(bx, x4, comp(abs(by, y4, t_app(x4, y4)), cy(by, y5, s_app(x4, y5))));
        B = cy(by, y3, comp(abs(bx, x3, s_app(x3, y3)), inner));
      }
      r.rhs = tuple({A, B});
      break;
    }
    case Family::R11:
    case Family::R12:
    case Family::R14:
    case Family::R15:
    case Family::R16: {
      const TypeName& c = key.types[0];
      const DatatypeDecl& d = sig_->datatype(c);
      const Symbol* nu = d.br_unit;
      const Symbol* mu = d.br_branch;
      r.guard = std::string("AxBr(") + nu->name + ", " + mu->name + ")";
      Term t = b.mv("t", {}, {}, {c});
      auto x = names_for(1, "x");
      Term xv = fvar(x[0], c);
      if (key.family == Family::R11) {
        r.lhs = cy(binders_of({c}, "x"), x, app(mu, {xv, t}));
        r.rhs = t;
        r.guard += "; t does not involve x";
      } else if (key.family == Family::R12) {
        r.lhs = cy(binders_of({c}, "x"), x, app(mu, {t, xv}));
        r.rhs = t;
        r.guard += "; t does not involve x";
      } else if (key.family == Family::R14) {
        r.lhs = cy(binders_of({c}, "x"), x, xv);
        r.rhs = app(nu, {});
      } else if (key.family == Family::R15) {
        r.lhs = app(mu, {app(nu, {}), t});
        r.rhs = t;
      } else {
        r.lhs = app(mu, {t, app(nu, {})});
        r.rhs = t;
      }
      break;
    }
    case Family::R13: {
      const TypeSeq& ts = key.types;
      auto ys = names_for(ts.size(), "y");
      Term t = b.mv("t", {}, {}, ts);
      r.lhs = cy(binders_of(ts, "y"), ys, t);
      r.rhs = t;
      r.guard = "t does not involve the bound variables";
      break;
    }
  }
  r.meta = std::move(b.meta);
  return r;
}

std::optional<RuleKey> RuleSet::key_for(Family f, const Term& t) const {
  if (t->tag != Tag::App) return std::nullopt;
  RuleKey key;
  key.family = f;
  switch (f) {
    case Family::R1:
    case Family::R2:
    case Family::R3:
    case Family::R4:
    case Family::R5: {
      if (!is_fold(t)) return std::nullopt;
      key.fold = t->sym;
      key.k = fold_params(t);
      const Term& st = fold_structure(t);
      if ((key.k > 0) != (st->tag == Tag::Abs)) return std::nullopt;
      if (key.k > 0 && st->binders.size() != static_cast<std::size_t>(key.k)) return std::nullopt;
      const Term& body = key.k > 0 ? st->body() : st;
      if (f == Family::R1) {
        if (body->tag != Tag::BVar || body->depth != 0) return std::nullopt;
        key.i = body->slot;
        return key;
      }
      if (body->tag != Tag::App) return std::nullopt;
      if (f == Family::R2) return is_app(body, SymKind::Unit) ? std::optional(key) : std::nullopt;
      if (f == Family::R3) {
        if (!is_app(body, SymKind::Tuple)) return std::nullopt;
        for (auto& a : body->args) key.widths.push_back(a->width);
        return key;
      }
      if (f == Family::R4) {
        if (!is_app(body, SymKind::Cy)) return std::nullopt;
        key.i = abs_arity(body->args[0]);
        return key;
      }
      if (!is_app(body, SymKind::Ctor)) return std::nullopt;
      for (auto* c : t->sym->cases)
        if (c == body->sym) {
          key.ctor = c;
          return key;
        }
      return std::nullopt;
    }
    case Family::R7: {
      if (!is_app(t, SymKind::Comp) || t->args[0]->tag != Tag::Abs) return std::nullopt;
      const Term& lam = t->args[0];
      const Term& arg = t->args[1];
      std::size_t n = lam->binders.size();
      if (n == 1) {
        if (arg->width != 1) return std::nullopt;
      } else {
        if (!is_app(arg, SymKind::Tuple) || arg->args.size() != n) return std::nullopt;
        for (auto& a : arg->args)
          if (a->width != 1) return std::nullopt;
      }
      for (auto& b : lam->binders) key.types.push_back(b.type);
      try {
        key.result = type_of(open_names(lam, fresh_names(lam->binders)));
      } catch (const Error&) {
        key.result = TypeSeq(static_cast<std::size_t>(lam->body()->width), "?");
      }
      return key;
    }
    case Family::R10: {
      if (!is_app(t, SymKind::Cy)) return std::nullopt;
      const Term& a = t->args[0];
      const Term& body = a->body();
      if (!is_app(body, SymKind::Tuple) || body->args.size() < 2) return std::nullopt;
      for (auto& c : body->args) key.widths.push_back(c->width);
      if (key.widths[0] == 0 || static_cast<std::size_t>(key.widths[0]) >= a->binders.size())
        return std::nullopt;
      for (auto& b : a->binders) key.types.push_back(b.type);
      return key;
    }
    case Family::R13: {
      if (!is_app(t, SymKind::Cy)) return std::nullopt;
      for (auto& b : t->args[0]->binders) key.types.push_back(b.type);
      return key;
    }
    case Family::R11:
    case Family::R12:
    case Family::R14: {
      if (!is_app(t, SymKind::Cy)) return std::nullopt;
      const Term& a = t->args[0];
      if (a->binders.size() != 1) return std::nullopt;
      const DatatypeDecl* d = sig_->find_datatype(a->binders[0].type);
      if (!d || !d->has_axbr()) return std::nullopt;
      const Term& body = a->body();
      if (f == Family::R14) {
        if (body->tag != Tag::BVar) return std::nullopt;
      } else if (!(body->tag == Tag::App && body->sym == d->br_branch)) {
        return std::nullopt;
      }
      key.types = {d->name};
      return key;
    }
    case Family::R15:
    case Family::R16: {
      if (t->sym->kind != SymKind::Ctor || t->sym->role != BrRole::Branch) return std::nullopt;
      const Term& side = t->args[f == Family::R15 ? 0 : 1];
      if (!(side->tag == Tag::App && side->sym->role == BrRole::Unit)) return std::nullopt;
      key.types = {t->sym->result};
      return key;
    }
  }
  return std::nullopt;
}

const RewriteRule& RuleSet::instance(const RuleKey& k) const {
  std::string s = k.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return *it->second;
  }
  auto r = std::make_unique<RewriteRule>(build(k));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(s, std::move(r));
  return *it->second;
}

std::vector<RuleSet::Fired> RuleSet::all_root(const Term& t) const {
  std::vector<Fired> out;
  for (Family f : families_) {
    auto key = key_for(f, t);
    if (!key) continue;
    const RewriteRule& r = instance(*key);
    auto theta = match(r.lhs, t);
    if (!theta) continue;
    out.push_back({&r, subst_meta(r.rhs, *theta)});
  }
  return out;
}

std::optional<RuleSet::Fired> RuleSet::apply_root(const Term& t) const {
  if (t->tag != Tag::App) return std::nullopt;
  for (Family f : families_) {
    auto key = key_for(f, t);
    if (!key) continue;
    const RewriteRule& r = instance(*key);
    auto theta = match(r.lhs, t);
    if (!theta) continue;
    return Fired{&r, subst_meta(r.rhs, *theta)};
  }
  return std::nullopt;
}

namespace {

// Sequences of positive integers summing to `total` with at least two parts.
void compositions(int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (total == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (int w = 1; w <= total; ++w) {
    cur.push_back(w);
    compositions(total - w, cur, out);
    cur.pop_back();
  }
}

void type_seqs(const TypeSeq& base, std::size_t n, TypeSeq& cur, std::vector<TypeSeq>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (auto& t : base) {
    cur.push_back(t);
    type_seqs(base, n, cur, out);
    cur.pop_back();
  }
}

std::vector<TypeSeq> all_seqs(const TypeSeq& base, int lo, int hi) {
  std::vector<TypeSeq> out;
  for (int n = lo; n <= hi; ++n) {
    TypeSeq cur;
    type_seqs(base, static_cast<std::size_t>(n), cur, out);
  }
  return out;
}

}  // namespace

std::vector<RewriteRule> RuleSet::enumerate(int bound) const {
  std::vector<RewriteRule> out;
  const TypeSeq& dts = sig_->datatype_order();
  for (Family f : families_) {
    RuleKey key;
    key.family = f;
    switch (f) {
      case Family::R1:
      case Family::R2:
      case Family::R3:
      case Family::R4:
      case Family::R5:
        for (auto* F : sig_->folds()) {
          key.fold = F;
          for (int k = 0; k <= bound; ++k) {
            key.k = k;
            if (f == Family::R1) {
              for (int i = 0; i < k; ++i) {
                key.i = i;
                out.push_back(build(key));
              }
            } else if (f == Family::R2) {
              out.push_back(build(key));
            } else if (f == Family::R3) {
              for (int tot = 2; tot <= bound; ++tot) {
                std::vector<std::vector<int>> ws;
                std::vector<int> cur;
                compositions(tot, cur, ws);
                for (auto& w : ws) {
                  key.widths = w;
                  out.push_back(build(key));
                }
              }
              key.widths.clear();
            } else if (f == Family::R4) {
              for (int n = 1; n <= bound; ++n) {
                key.i = n;
                out.push_back(build(key));
              }
            } else {
              for (auto* d : F->cases) {
                key.ctor = d;
                out.push_back(build(key));
              }
              key.ctor = nullptr;
            }
          }
        }
        break;
      case Family::R7:
        for (auto& ts : all_seqs(dts, 1, bound))
          for (auto& res : dts) {
            key.types = ts;
            key.result = {res};
            out.push_back(build(key));
          }
        break;
      case Family::R10:
        for (auto& ts : all_seqs(dts, 2, bound)) {
          std::vector<std::vector<int>> ws;
          std::vector<int> cur;
          compositions(static_cast<int>(ts.size()), cur, ws);
          for (auto& w : ws) {
            key.types = ts;
            key.widths = w;
            out.push_back(build(key));
          }
        }
        break;
      case Family::R13:
        for (auto& ts : all_seqs(dts, 1, bound)) {
          key.types = ts;
          out.push_back(build(key));
        }
        break;
      default:
        for (auto& c : dts)
          if (sig_->datatype(c).has_axbr()) {
            key.types = {c};
            out.push_back(build(key));
          }
        break;
    }
  }
  return out;
}

}  // namespace cyc
