#include "cycdt/rewrite.hpp"

#include <cstdlib>
#include <set>

namespace cyc {

std::size_t default_fuel() {
  if (const char* e = std::getenv("CYCDT_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end != e && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

namespace {

// Rewrite the child subterm `c` of a node with `f`, opening an Abs first.
template <class F>
auto under(const Term& c, F&& f) {
  if (c->tag != Tag::Abs) return f(c);
  auto names = fresh_names(c->binders);
  auto r = f(open_names(c, names));
  if (r) r->first = abs(c->binders, names, r->first);
  return r;
}

using Hit = std::optional<std::pair<Term, Step>>;

Hit first_redex(const Term& t, const RuleSet& rules, Position& path) {
  if (t->tag == Tag::App) {
    if (auto f = rules.apply_root(t)) {
      Step s;
      s.rule = f->rule;
      s.position = path;
      return std::make_pair(f->result, s);
    }
  }
  if (t->tag != Tag::App && t->tag != Tag::Meta) return std::nullopt;
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    const Term& c = t->args[i];
    Hit h;
    if (c->tag == Tag::Abs) {
      path.push_back(0);
      h = under(c, [&](const Term& body) { return first_redex(body, rules, path); });
      path.pop_back();
    } else {
      h = first_redex(c, rules, path);
    }
    path.pop_back();
    if (h) {
      auto args = t->args;
      args[i] = h->first;
      h->first = rebuild(t, args);
      return h;
    }
  }
  return std::nullopt;
}

void collect(const Term& t, const RuleSet& rules, Position& path,
             const std::function<Term(const Term&)>& plug, std::vector<Step>& out, bool all_rules) {
  if (t->tag == Tag::App) {
    if (all_rules) {
      for (auto& f : rules.all_root(t)) {
        Step s;
        s.rule = f.rule;
        s.position = path;
        s.after = plug(f.result);
        out.push_back(s);
      }
    } else if (auto f = rules.apply_root(t)) {
      Step s;
      s.rule = f->rule;
      s.position = path;
      s.after = plug(f->result);
      out.push_back(s);
    }
  }
  if (t->tag != Tag::App && t->tag != Tag::Meta) return;
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    const Term& c = t->args[i];
    path.push_back(static_cast<int>(i));
    auto at = [&, i](const Term& nc) {
      auto args = t->args;
      args[i] = nc;
      return plug(rebuild(t, args));
    };
    if (c->tag == Tag::Abs) {
      path.push_back(0);
      auto names = fresh_names(c->binders);
      std::function<Term(const Term&)> inner = [&](const Term& nb) { return at(abs(c->binders, names, nb)); };
      collect(open_names(c, names), rules, path, inner, out, all_rules);
      path.pop_back();
    } else {
      std::function<Term(const Term&)> inner = at;
      collect(c, rules, path, inner, out, all_rules);
    }
    path.pop_back();
  }
}

}  // namespace

std::optional<Step> step(const Term& t, const RuleSet& rules) {
  Position path;
  auto h = first_redex(t, rules, path);
  if (!h) return std::nullopt;
  h->second.before = t;
  h->second.after = h->first;
  return h->second;
}

std::vector<Step> all_steps(const Term& t, const RuleSet& rules) {
  std::vector<Step> out;
  Position path;
  collect(t, rules, path, [](const Term& x) { return x; }, out, true);
  for (auto& s : out) s.before = t;
  return out;
}

std::optional<Step> random_step(const Term& t, const RuleSet& rules, std::mt19937_64& rng) {
  std::vector<Step> out;
  Position path;
  collect(t, rules, path, [](const Term& x) { return x; }, out, false);
  if (out.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> d(0, out.size() - 1);
  Step s = out[d(rng)];
  s.before = t;
  return s;
}

Trace normalize_with(const Term& t, const Strategy& strategy, std::size_t fuel, bool record) {
  Trace tr;
  tr.start = t;
  Term cur = t;
  while (auto s = strategy(cur)) {
    if (tr.count >= fuel)
      throw FuelExhausted("rewriting did not terminate within " + std::to_string(fuel) + " steps");
    cur = s->after;
    ++tr.count;
    if (record) tr.steps.push_back(std::move(*s));
  }
  tr.final = cur;
  return tr;
}

Trace normalize(const Term& t, const RuleSet& rules, std::size_t fuel, bool record) {
  return normalize_with(t, [&](const Term& x) { return step(x, rules); }, fuel, record);
}

Term normal_form(const Term& t, const RuleSet& rules, std::size_t fuel) {
  return normalize(t, rules, fuel, false).final;
}

Term subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (int i : p) {
    if (cur->tag == Tag::Abs) {
      cur = open_names(cur, fresh_names(cur->binders));
      continue;
    }
    if (i < 0 || static_cast<std::size_t>(i) >= cur->args.size()) throw Error("invalid position");
    cur = cur->args[static_cast<std::size_t>(i)];
  }
  return cur;
}

bool is_value(const Term& t) {
  switch (t->tag) {
    case Tag::Meta:
      return false;
    case Tag::App:
      if (t->sym->kind == SymKind::Fold) return false;
      [[fallthrough]];
    case Tag::Abs:
      for (auto& a : t->args)
        if (!is_value(a)) return false;
      return true;
    default:
      return true;
  }
}

namespace {

// Walk with binders opened; `cy_bound` holds names introduced by enclosing cy nodes.
std::optional<Term> scan_bad(const Term& t, std::set<std::string>& cy_bound) {
  if (t->tag != Tag::App && t->tag != Tag::Meta) return std::nullopt;
  if (is_fold(t) && !cy_bound.empty()) {
    for (auto& v : free_vars(fold_structure(t)))
      if (cy_bound.count(v)) return t;
  }
  bool is_cy = is_app(t, SymKind::Cy);
  for (auto& c : t->args) {
    if (c->tag == Tag::Abs) {
      auto names = fresh_names(c->binders);
      if (is_cy) cy_bound.insert(names.begin(), names.end());
      auto r = scan_bad(open_names(c, names), cy_bound);
      if (is_cy)
        for (auto& n : names) cy_bound.erase(n);
      if (r) return is_cy ? std::optional<Term>(t) : r;
    } else if (auto r = scan_bad(c, cy_bound)) {
      return r;
    }
  }
  return std::nullopt;
}

std::optional<Term> scan_open(const Term& t, const std::set<std::string>& outer) {
  if (t->tag != Tag::App && t->tag != Tag::Meta) return std::nullopt;
  if (is_fold(t)) {
    for (int i = 0; i < fold_cases(t); ++i)
      for (auto& v : free_vars(t->args[i]))
        if (outer.count(v)) return t;
  }
  for (auto& c : t->args) {
    Term x = c->tag == Tag::Abs ? open_names(c, fresh_names(c->binders)) : c;
    if (auto r = scan_open(x, outer)) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Term> bad_subterm(const Term& t) {
  std::set<std::string> bound;
  return scan_bad(t, bound);
}

std::optional<Term> bad_witness(const Term& t, const RuleSet& foldr) {
  return bad_subterm(normal_form(t, foldr));
}

bool is_bad(const Term& t, const RuleSet& foldr) { return bad_witness(t, foldr).has_value(); }

std::optional<Term> open_fold_witness(const Term& t) { return scan_open(t, free_vars(t)); }

TCheck check_T(const Term& t, const RuleSet& foldr) {
  TCheck r;
  if (auto w = open_fold_witness(t)) {
    r.ok = false;
    r.reason = "open-fold";
    r.witness = *w;
    return r;
  }
  if (auto w = bad_witness(t, foldr)) {
    r.ok = false;
    r.reason = "bad";
    r.witness = *w;
  }
  return r;
}

bool in_T(const Term& t, const RuleSet& foldr) { return check_T(t, foldr).ok; }

}  // namespace cyc
