#include "cycdt/term.hpp"

#include <atomic>
#include <functional>
#include <tuple>

namespace cyc {

std::string show_types(const TypeSeq& ts) {
  if (ts.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ",";
    s += ts[i].empty() ? "?" : ts[i];
  }
  return s;
}

namespace {
Symbol make_builtin(SymKind k, const char* name) {
  Symbol s;
  s.kind = k;
  s.name = name;
  return s;
}
}  // namespace

const Symbol* Symbol::unit() {
  static const Symbol s = make_builtin(SymKind::Unit, "<>");
  return &s;
}
const Symbol* Symbol::tuple() {
  static const Symbol s = make_builtin(SymKind::Tuple, "<,>");
  return &s;
}
const Symbol* Symbol::cy() {
  static const Symbol s = make_builtin(SymKind::Cy, "cy");
  return &s;
}
const Symbol* Symbol::comp() {
  static const Symbol s = make_builtin(SymKind::Comp, "@");
  return &s;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

Term finish(TermNode n) {
  std::size_t h = static_cast<std::size_t>(n.tag) * 1315423911u;
  std::size_t sz = 1;
  switch (n.tag) {
    case Tag::FVar:
      h = mix(h, hash_str(n.name));
      break;
    case Tag::BVar:
      h = mix(mix(h, n.depth), n.slot);
      break;
    case Tag::Lit:
      h = mix(mix(h, hash_str(n.name)), hash_str(n.type));
      break;
    case Tag::Meta:
      h = mix(h, hash_str(n.name));
      break;
    case Tag::App:
      h = mix(h, reinterpret_cast<std::size_t>(n.sym));
      break;
    case Tag::Abs:
      h = mix(h, n.binders.size());
      for (auto& b : n.binders) h = mix(h, hash_str(b.type));
      break;
  }
  for (auto& a : n.args) {
    h = mix(h, a->hash);
    sz += a->size;
  }
  n.hash = h;
  n.size = sz;
  return std::make_shared<const TermNode>(std::move(n));
}

int compute_width(const Symbol* sym, const std::vector<Term>& args) {
  switch (sym->kind) {
    case SymKind::Ctor:
      return 1;
    case SymKind::Unit:
      return 0;
    case SymKind::Tuple: {
      int w = 0;
      for (auto& a : args) w += a->width;
      return w;
    }
    case SymKind::Cy:
      return args.empty() ? 0 : static_cast<int>(args[0]->binders.size());
    case SymKind::Comp:
      return args.empty() ? 0 : args[0]->width;
    case SymKind::Fold: {
      std::size_t m = sym->cases.size();
      if (args.size() <= m) return 0;
      return static_cast<int>(sym->target.size()) * args[m]->width;
    }
  }
  return 1;
}

}  // namespace

Term fvar(const std::string& name, const TypeName& type) {
  TermNode n{Tag::FVar};
  n.name = name;
  n.type = type;
  return finish(std::move(n));
}

Term bvar(int depth, int slot) {
  TermNode n{Tag::BVar};
  n.depth = depth;
  n.slot = slot;
  return finish(std::move(n));
}

Term lit(const std::string& payload, const TypeName& type) {
  TermNode n{Tag::Lit};
  n.name = payload;
  n.type = type;
  return finish(std::move(n));
}

Term meta(const std::string& name, std::vector<Term> args, int width) {
  TermNode n{Tag::Meta};
  n.name = name;
  n.args = std::move(args);
  n.width = width;
  return finish(std::move(n));
}

Term app(const Symbol* sym, std::vector<Term> args) {
  if (sym->kind == SymKind::Tuple) return tuple(std::move(args));
  TermNode n{Tag::App};
  n.sym = sym;
  n.width = compute_width(sym, args);
  n.args = std::move(args);
  return finish(std::move(n));
}

Term abs_raw(std::vector<Binder> binders, Term body) {
  if (binders.empty()) throw Error("abstraction with no binders");
  TermNode n{Tag::Abs};
  n.binders = std::move(binders);
  n.width = body->width;
  n.args.push_back(std::move(body));
  return finish(std::move(n));
}

Term abs(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body) {
  return abs_raw(std::move(binders), close(body, names));
}

Term maybe_abs(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body) {
  if (binders.empty()) return body;
  return abs(std::move(binders), names, body);
}

Term unit() {
  static const Term u = [] {
    TermNode n{Tag::App};
    n.sym = Symbol::unit();
    n.width = 0;
    return finish(std::move(n));
  }();
  return u;
}

Term tuple(std::vector<Term> items) {
  std::vector<Term> flat;
  for (auto& t : items) {
    if (t->tag == Tag::App && t->sym->kind == SymKind::Tuple) {
      for (auto& s : t->args) flat.push_back(s);
    } else if (t->tag == Tag::App && t->sym->kind == SymKind::Unit) {
      continue;
    } else {
      flat.push_back(t);
    }
  }
  if (flat.empty()) return unit();
  if (flat.size() == 1) return flat[0];
  TermNode n{Tag::App};
  n.sym = Symbol::tuple();
  n.width = compute_width(n.sym, flat);
  n.args = std::move(flat);
  return finish(std::move(n));
}

Term cy(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body) {
  return app(Symbol::cy(), {abs(std::move(binders), names, body)});
}

Term comp(const Term& lam, const Term& arg) { return app(Symbol::comp(), {lam, arg}); }

bool is_app(const Term& t, SymKind k) { return t->tag == Tag::App && t->sym->kind == k; }
bool is_fold(const Term& t) { return is_app(t, SymKind::Fold); }
int fold_cases(const Term& t) { return static_cast<int>(t->sym->cases.size()); }
int fold_params(const Term& t) { return static_cast<int>(t->args.size()) - fold_cases(t) - 1; }
const Term& fold_structure(const Term& t) { return t->args[t->sym->cases.size()]; }
int abs_arity(const Term& t) { return t->tag == Tag::Abs ? static_cast<int>(t->binders.size()) : 0; }

namespace {
std::atomic<unsigned long> fresh_counter{0};
}

std::string fresh_name(const std::string& hint) {
  std::string base = hint;
  auto p = base.find('%');
  if (p != std::string::npos) base = base.substr(0, p);
  if (base.empty()) base = "v";
  return base + "%" + std::to_string(++fresh_counter);
}

bool is_internal_name(const std::string& n) { return n.find('%') != std::string::npos; }

std::vector<std::string> fresh_names(const std::vector<Binder>& bs) {
  std::vector<std::string> r;
  for (auto& b : bs) r.push_back(fresh_name(b.hint));
  return r;
}

Term rebuild(const Term& t, std::vector<Term> args) {
  switch (t->tag) {
    case Tag::App:
      return app(t->sym, std::move(args));
    case Tag::Meta:
      return meta(t->name, std::move(args), t->width);
    case Tag::Abs:
      return abs_raw(t->binders, std::move(args[0]));
    default:
      return t;
  }
}

namespace {

Term open_rec(const Term& t, int level, const std::vector<Term>& repl) {
  switch (t->tag) {
    case Tag::BVar:
      if (t->depth == level) return repl.at(t->slot);
      return t;
    case Tag::FVar:
    case Tag::Lit:
      return t;
    default: {
      int inner = t->tag == Tag::Abs ? level + 1 : level;
      std::vector<Term> na;
      bool changed = false;
      na.reserve(t->args.size());
      for (auto& a : t->args) {
        na.push_back(open_rec(a, inner, repl));
        if (na.back() != a) changed = true;
      }
      if (!changed) return t;
      return rebuild(t, std::move(na));
    }
  }
}

Term close_rec(const Term& t, int level, const std::vector<std::string>& names) {
  switch (t->tag) {
    case Tag::FVar:
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == t->name) return bvar(level, static_cast<int>(i));
      return t;
    case Tag::BVar:
    case Tag::Lit:
      return t;
    default: {
      int inner = t->tag == Tag::Abs ? level + 1 : level;
      std::vector<Term> na;
      bool changed = false;
      na.reserve(t->args.size());
      for (auto& a : t->args) {
        na.push_back(close_rec(a, inner, names));
        if (na.back() != a) changed = true;
      }
      if (!changed) return t;
      return rebuild(t, std::move(na));
    }
  }
}

bool lc_rec(const Term& t, int level) {
  if (t->tag == Tag::BVar) return t->depth < level;
  int inner = t->tag == Tag::Abs ? level + 1 : level;
  for (auto& a : t->args)
    if (!lc_rec(a, inner)) return false;
  return true;
}

}  // namespace

Term open(const Term& abs_node, const std::vector<Term>& repl) {
  if (abs_node->tag != Tag::Abs) throw Error("open: not an abstraction");
  return open_rec(abs_node->body(), 0, repl);
}

Term open_names(const Term& abs_node, const std::vector<std::string>& names,
                const std::vector<Binder>* types) {
  std::vector<Term> repl;
  const auto& bs = types ? *types : abs_node->binders;
  for (std::size_t i = 0; i < names.size(); ++i) repl.push_back(fvar(names[i], bs[i].type));
  return open(abs_node, repl);
}

Term close(const Term& t, const std::vector<std::string>& names) {
  if (names.empty()) return t;
  return close_rec(t, 0, names);
}

bool locally_closed(const Term& t) { return lc_rec(t, 0); }

bool alpha_eq(const Term& s, const Term& t) {
  if (s == t) return true;
  if (s->hash != t->hash || s->tag != t->tag || s->args.size() != t->args.size()) return false;
  switch (s->tag) {
    case Tag::FVar:
      if (s->name != t->name) return false;
      break;
    case Tag::BVar:
      if (s->depth != t->depth || s->slot != t->slot) return false;
      break;
    case Tag::Lit:
      if (s->name != t->name || s->type != t->type) return false;
      break;
    case Tag::Meta:
      if (s->name != t->name) return false;
      break;
    case Tag::App:
      if (s->sym != t->sym) return false;
      break;
    case Tag::Abs:
      if (s->binders.size() != t->binders.size()) return false;
      for (std::size_t i = 0; i < s->binders.size(); ++i)
        if (s->binders[i].type != t->binders[i].type) return false;
      break;
  }
  for (std::size_t i = 0; i < s->args.size(); ++i)
    if (!alpha_eq(s->args[i], t->args[i])) return false;
  return true;
}

namespace {
int cmp_terms(const Term& a, const Term& b) {
  if (a == b) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  auto c3 = [](const auto& x, const auto& y) { return x < y ? -1 : (y < x ? 1 : 0); };
  int c = 0;
  switch (a->tag) {
    case Tag::FVar:
      c = c3(a->name, b->name);
      break;
    case Tag::BVar:
      c = c3(std::pair(a->depth, a->slot), std::pair(b->depth, b->slot));
      break;
    case Tag::Lit:
      c = c3(std::pair(a->name, a->type), std::pair(b->name, b->type));
      break;
    case Tag::Meta:
      c = c3(a->name, b->name);
      break;
    case Tag::App:
      c = c3(std::tie(a->sym->name, a->sym->result, a->sym->source, a->sym->target),
             std::tie(b->sym->name, b->sym->result, b->sym->source, b->sym->target));
      break;
    case Tag::Abs: {
      std::vector<TypeName> ta, tb;
      for (auto& x : a->binders) ta.push_back(x.type);
      for (auto& x : b->binders) tb.push_back(x.type);
      c = c3(ta, tb);
      break;
    }
  }
  if (c) return c;
  if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (int d = cmp_terms(a->args[i], b->args[i])) return d;
  return 0;
}
}  // namespace

bool AlphaLess::operator()(const Term& a, const Term& b) const { return cmp_terms(a, b) < 0; }

namespace {
void fv_rec(const Term& t, std::set<std::string>& out) {
  if (t->tag == Tag::FVar) {
    out.insert(t->name);
    return;
  }
  for (auto& a : t->args) fv_rec(a, out);
}
void mv_rec(const Term& t, std::set<std::string>& out) {
  if (t->tag == Tag::Meta) out.insert(t->name);
  for (auto& a : t->args) mv_rec(a, out);
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  fv_rec(t, out);
  return out;
}

bool occurs_free(const std::string& x, const Term& t) {
  if (t->tag == Tag::FVar) return t->name == x;
  for (auto& a : t->args)
    if (occurs_free(x, a)) return true;
  return false;
}

std::set<std::string> metavars(const Term& t) {
  std::set<std::string> out;
  mv_rec(t, out);
  return out;
}

bool has_meta(const Term& t) {
  if (t->tag == Tag::Meta) return true;
  for (auto& a : t->args)
    if (has_meta(a)) return true;
  return false;
}

Term subst_vars(const Term& t, const std::map<std::string, Term>& bindings) {
  if (bindings.empty()) return t;
  if (t->tag == Tag::FVar) {
    auto it = bindings.find(t->name);
    if (it == bindings.end()) return t;
    if (!t->type.empty() && it->second->width != 1)
      throw Error("subst_vars: binding for " + t->name + " has width " +
                  std::to_string(it->second->width));
    if (!locally_closed(it->second)) throw Error("subst_vars: binding is not locally closed");
    return it->second;
  }
  if (t->args.empty()) return t;
  std::vector<Term> na;
  bool changed = false;
  for (auto& a : t->args) {
    na.push_back(subst_vars(a, bindings));
    if (na.back() != a) changed = true;
  }
  return changed ? rebuild(t, std::move(na)) : t;
}

MetaBinding meta_binding(std::vector<Binder> binders, const std::vector<std::string>& names,
                         const Term& body) {
  MetaBinding b;
  b.body = maybe_abs(binders, names, body);
  b.binders = std::move(binders);
  return b;
}

Term apply_binding(const MetaBinding& b, const std::vector<Term>& args) {
  int total = 0;
  for (auto& a : args) total += a->width;
  if (total != static_cast<int>(b.binders.size()))
    throw Error("metavariable arity mismatch: binding has " + std::to_string(b.binders.size()) +
                " binders, arguments have width " + std::to_string(total));
  if (b.binders.empty()) return b.body;
  std::vector<Term> repl(b.binders.size());
  struct Wrap {
    std::size_t from, count;
    Term arg;
    std::vector<std::string> names;
  };
  std::vector<Wrap> wraps;
  std::size_t pos = 0;
  for (auto& a : args) {
    std::size_t w = static_cast<std::size_t>(a->width);
    if (w == 1) {
      repl[pos] = a;
    } else if (w > 1 && is_app(a, SymKind::Tuple) && a->args.size() == w) {
      for (std::size_t j = 0; j < w; ++j) repl[pos + j] = a->args[j];
    } else if (w > 1) {
      Wrap wr{pos, w, a, {}};
      for (std::size_t j = 0; j < w; ++j) {
        wr.names.push_back(fresh_name(b.binders[pos + j].hint));
        repl[pos + j] = fvar(wr.names.back(), b.binders[pos + j].type);
      }
      wraps.push_back(std::move(wr));
    }
    pos += w;
  }
  Term r = open(b.body, repl);
  for (auto it = wraps.rbegin(); it != wraps.rend(); ++it) {
    std::vector<Binder> bs(b.binders.begin() + it->from, b.binders.begin() + it->from + it->count);
    r = comp(abs(bs, it->names, r), it->arg);
  }
  return r;
}

namespace {

TypeName resolve_type(const TypeName& t, const TypeAssignment* types) {
  if (!types || t.empty() || t[0] != '\'') return t;
  auto it = types->find(t);
  return it == types->end() ? t : it->second;
}

Term sm_rec(const Term& t, const MetaAssignment& theta, const TypeAssignment* types) {
  switch (t->tag) {
    case Tag::FVar:
    case Tag::BVar:
    case Tag::Lit:
      return t;
    case Tag::Abs: {
      std::vector<Binder> bs = t->binders;
      for (auto& b : bs) b.type = resolve_type(b.type, types);
      auto names = fresh_names(bs);
      Term body = sm_rec(open_names(t, names, &bs), theta, types);
      return abs(bs, names, body);
    }
    case Tag::Meta: {
      auto it = theta.find(t->name);
      if (it == theta.end()) throw Error("unassigned metavariable " + t->name);
      std::vector<Term> args;
      for (auto& a : t->args) args.push_back(sm_rec(a, theta, types));
      return apply_binding(it->second, args);
    }
    case Tag::App: {
      std::vector<Term> na;
      for (auto& a : t->args) na.push_back(sm_rec(a, theta, types));
      return app(t->sym, std::move(na));
    }
  }
  return t;
}

}  // namespace

Term subst_meta(const Term& e, const MetaAssignment& theta, const TypeAssignment* types) {
  return sm_rec(e, theta, types);
}

int width(const Term& t) { return t->width; }

}  // namespace cyc
