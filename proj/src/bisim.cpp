#include "cycdt/bisim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cycdt/print.hpp"
#include "cycdt/typing.hpp"

namespace cyc {

namespace {

// Raw graph before epsilon closure: a node either carries one labelled edge
// or forwards through epsilon edges (cy placeholders, AxBr branch and unit).
struct RawNode {
  TypeName type;
  bool labelled = false;
  ChartEdge edge;
  std::vector<int> eps;
};

class Translator {
 public:
  explicit Translator(const Signature& sig) : sig_(sig) {}

  std::vector<RawNode> nodes;
  bool incomplete = false;

  int add(TypeName type) {
    nodes.push_back({std::move(type), false, {}, {}});
    return static_cast<int>(nodes.size()) - 1;
  }

  std::vector<int> go(const Term& t, std::map<std::string, int>& env) {
    switch (t->tag) {
      case Tag::FVar: {
        auto it = env.find(t->name);
        if (it != env.end()) return {it->second};
        int n = add(t->type);
        nodes[n].labelled = true;
        nodes[n].edge.label = "?var:" + t->name;
        incomplete = true;
        return {n};
      }
      case Tag::Lit: {
        int n = add(t->type);
        nodes[n].labelled = true;
        nodes[n].edge.label = "\"" + t->name + "\"";
        return {n};
      }
      case Tag::Meta:
        throw Error("charts are defined for terms without metavariables");
      case Tag::BVar:
      case Tag::Abs:
        throw Error("malformed term in chart translation");
      case Tag::App:
        break;
    }
    const Symbol* s = t->sym;
    switch (s->kind) {
      case SymKind::Unit:
        return {};
      case SymKind::Tuple: {
        std::vector<int> r;
        for (auto& a : t->args) {
          auto x = go(a, env);
          r.insert(r.end(), x.begin(), x.end());
        }
        return r;
      }
      case SymKind::Cy: {
        const Term& a = t->args[0];
        auto names = fresh_names(a->binders);
        std::vector<int> ph;
        for (std::size_t i = 0; i < names.size(); ++i) {
          ph.push_back(add(a->binders[i].type));
          env[names[i]] = ph.back();
        }
        auto roots = go(open_names(a, names), env);
        for (auto& n : names) env.erase(n);
        for (std::size_t i = 0; i < ph.size(); ++i) nodes[ph[i]].eps.push_back(roots.at(i));
        return ph;
      }
      case SymKind::Comp: {
        const Term& a = t->args[0];
        auto arg = go(t->args[1], env);
        if (a->tag != Tag::Abs || arg.size() != a->binders.size()) throw Error("malformed composition");
        auto names = fresh_names(a->binders);
        for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = arg[i];
        auto r = go(open_names(a, names), env);
        for (auto& n : names) env.erase(n);
        return r;
      }
      case SymKind::Fold:
        return stuck(t, env);
      case SymKind::Ctor:
        break;
    }
    std::vector<int> kids;
    for (auto& a : t->args) {
      auto x = go(a, env);
      kids.insert(kids.end(), x.begin(), x.end());
    }
    int n = add(s->result);
    if (s->role == BrRole::Branch) {
      nodes[n].eps = kids;
    } else if (s->role != BrRole::Unit) {
      nodes[n].labelled = true;
      nodes[n].edge = {s->name, kids};
    }
    return {n};
  }

 private:
  // Binder hints reset so alpha-equal terms print identically.
  static Term plain_binders(const Term& t) {
    if (t->args.empty()) return t;
    std::vector<Term> args;
    for (auto& a : t->args) args.push_back(plain_binders(a));
    if (t->tag != Tag::Abs) return rebuild(t, std::move(args));
    std::vector<Binder> bs = t->binders;
    for (auto& b : bs) b.hint = "v";
    return abs_raw(std::move(bs), args[0]);
  }

  // Non-value subterm: one opaque node per component; its children are the
  // chart nodes of the context-bound variables it mentions.
  std::vector<int> stuck(const Term& t, std::map<std::string, int>& env) {
    incomplete = true;
    std::vector<std::string> order;
    std::function<void(const Term&)> walk = [&](const Term& x) {
      if (x->tag == Tag::FVar) {
        if (env.count(x->name) && std::find(order.begin(), order.end(), x->name) == order.end())
          order.push_back(x->name);
        return;
      }
      for (auto& a : x->args) walk(a);
    };
    walk(t);
    std::map<std::string, Term> sub;
    std::vector<int> kids;
    for (std::size_t i = 0; i < order.size(); ++i) {
      sub[order[i]] = fvar("#" + std::to_string(i));
      kids.push_back(env.at(order[i]));
    }
    std::string fp = print(plain_binders(sub.empty() ? t : subst_vars(t, sub)));
    TypeSeq ts;
    try {
      ts = type_of(t);
    } catch (const Error&) {
      ts = TypeSeq(static_cast<std::size_t>(t->width), "");
    }
    std::vector<int> r;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      int n = add(ts[j]);
      nodes[n].labelled = true;
      nodes[n].edge = {"?stuck:" + fp + "#" + std::to_string(j), kids};
      r.push_back(n);
    }
    return r;
  }

  const Signature& sig_;
};

}  // namespace

Chart term_to_chart(const Term& t, const Signature& sig) {
  Translator tr(sig);
  std::map<std::string, int> env;
  auto roots = tr.go(t, env);
  const auto& raw = tr.nodes;
  std::size_t n = raw.size();
  // Epsilon closure.
  std::vector<ChartNode> closed(n);
  for (std::size_t i = 0; i < n; ++i) {
    closed[i].type = raw[i].type;
    const DatatypeDecl* d = sig.find_datatype(raw[i].type);
    bool axbr = d && d->has_axbr();
    if (raw[i].labelled) {
      closed[i].edges = {raw[i].edge};
      continue;
    }
    if (axbr) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{static_cast<int>(i)};
      std::set<std::pair<std::string, std::vector<int>>> edges;
      while (!stack.empty()) {
        int k = stack.back();
        stack.pop_back();
        if (seen[k]) continue;
        seen[k] = true;
        if (raw[k].labelled) {
          edges.insert({raw[k].edge.label, raw[k].edge.children});
          continue;
        }
        for (int e : raw[k].eps) stack.push_back(e);
      }
      for (auto& [l, c] : edges) closed[i].edges.push_back({l, c});
    } else {
      std::vector<bool> seen(n, false);
      int k = static_cast<int>(i);
      while (!raw[k].labelled && !seen[k] && raw[k].eps.size() == 1) {
        seen[k] = true;
        k = raw[k].eps[0];
      }
      if (raw[k].labelled)
        closed[i].edges = {raw[k].edge};
      else
        closed[i].divergent = true;
    }
  }
  // Keep only nodes reachable from the roots.
  std::vector<int> index(n, -1);
  std::vector<int> order;
  std::deque<int> q(roots.begin(), roots.end());
  while (!q.empty()) {
    int k = q.front();
    q.pop_front();
    if (index[k] >= 0) continue;
    index[k] = static_cast<int>(order.size());
    order.push_back(k);
    for (auto& e : closed[k].edges)
      for (int c : e.children) q.push_back(c);
  }
  Chart c;
  c.incomplete = tr.incomplete;
  for (int k : order) {
    ChartNode node = closed[k];
    for (auto& e : node.edges)
      for (int& ch : e.children) ch = index[ch];
    c.nodes.push_back(std::move(node));
  }
  for (int r : roots) {
    c.roots.push_back(index[r]);
    c.root_types.push_back(closed[r].type);
  }
  return c;
}

std::vector<int> coarsest_partition(const Chart& c, std::vector<std::vector<int>>* rounds) {
  std::size_t n = c.nodes.size();
  std::vector<int> block(n, 0);
  {
    std::map<std::pair<bool, TypeName>, int> init;
    for (std::size_t i = 0; i < n; ++i) {
      auto key = std::make_pair(c.nodes[i].divergent, c.nodes[i].type);
      auto it = init.emplace(key, static_cast<int>(init.size())).first;
      block[i] = it->second;
    }
  }
  if (rounds) rounds->push_back(block);
  std::size_t count = 0;
  for (int b : block) count = std::max(count, static_cast<std::size_t>(b) + 1);
  for (;;) {
    using Sig = std::pair<int, std::set<std::pair<std::string, std::vector<int>>>>;
    std::map<Sig, int> ids;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      Sig s;
      s.first = block[i];
      for (auto& e : c.nodes[i].edges) {
        std::vector<int> kb;
        for (int ch : e.children) kb.push_back(block[ch]);
        s.second.insert({e.label, kb});
      }
      next[i] = ids.emplace(s, static_cast<int>(ids.size())).first->second;
    }
    block = next;
    if (rounds) rounds->push_back(block);
    if (ids.size() == count) break;
    count = ids.size();
  }
  return block;
}

Chart chart_union(const Chart& a, const Chart& b) {
  Chart u = a;
  int off = static_cast<int>(a.nodes.size());
  for (auto node : b.nodes) {
    for (auto& e : node.edges)
      for (int& ch : e.children) ch += off;
    u.nodes.push_back(std::move(node));
  }
  for (int r : b.roots) u.roots.push_back(r + off);
  u.root_types.insert(u.root_types.end(), b.root_types.begin(), b.root_types.end());
  u.incomplete = a.incomplete || b.incomplete;
  return u;
}

namespace {

using NodeSet = std::vector<int>;  // sorted

NodeSet successors(const Chart& c, const NodeSet& s, const std::string& label, int child) {
  std::set<int> out;
  for (int n : s)
    for (auto& e : c.nodes[n].edges)
      if (e.label == label) {
        if (child < 0)
          out.insert(n);
        else
          out.insert(e.children[child]);
      }
  return NodeSet(out.begin(), out.end());
}

bool any_divergent(const Chart& c, const NodeSet& s) {
  for (int n : s)
    if (c.nodes[n].divergent) return true;
  return false;
}

// Shortest trace available from one set and not the other.
void find_path(const Chart& c, int ra, int rb, int root, BisimResult& res) {
  struct Item {
    NodeSet a, b;
    std::vector<std::string> path;
  };
  std::set<std::pair<NodeSet, NodeSet>> seen;
  std::deque<Item> q;
  q.push_back({{ra}, {rb}, {"#" + std::to_string(root)}});
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (!seen.insert({it.a, it.b}).second) continue;
    bool da = any_divergent(c, it.a), db = any_divergent(c, it.b);
    if (da != db) {
      res.path = it.path;
      res.path.push_back("divergent");
      res.path_side = da ? 1 : 2;
      return;
    }
    std::map<std::string, std::size_t> labels;
    for (const NodeSet* s : {&it.a, &it.b})
      for (int n : *s)
        for (auto& e : c.nodes[n].edges) labels[e.label] = e.children.size();
    for (auto& [l, arity] : labels) {
      for (int j = -1; j < static_cast<int>(arity); ++j) {
        NodeSet na = successors(c, it.a, l, j), nb = successors(c, it.b, l, j);
        auto p = it.path;
        p.push_back(l + "/" + (j < 0 ? std::string("-") : std::to_string(j)));
        if (na.empty() != nb.empty()) {
          res.path = p;
          res.path_side = na.empty() ? 2 : 1;
          return;
        }
        if (j >= 0) q.push_back({na, nb, p});
      }
    }
  }
}

}  // namespace

BisimResult bisimilar(const Chart& a, const Chart& b) {
  if (a.roots.size() != b.roots.size()) throw Error("bisimulation between terms of different widths");
  for (std::size_t i = 0; i < a.roots.size(); ++i)
    if (!a.root_types[i].empty() && !b.root_types[i].empty() && a.root_types[i] != b.root_types[i])
      throw Error("bisimulation between terms of different types: " + a.root_types[i] + " vs " +
                  b.root_types[i]);
  BisimResult res;
  res.joint = chart_union(a, b);
  res.incomplete = res.joint.incomplete;
  res.blocks = coarsest_partition(res.joint);
  res.equal = true;
  std::size_t off = a.roots.size();
  for (std::size_t i = 0; i < off; ++i) {
    int ra = res.joint.roots[i], rb = res.joint.roots[off + i];
    if (res.blocks[ra] != res.blocks[rb]) {
      res.equal = false;
      find_path(res.joint, ra, rb, static_cast<int>(i), res);
      break;
    }
  }
  return res;
}

bool eq_mod_bisim(const Term& s, const Term& t, const Signature& sig) {
  return bisimilar(term_to_chart(s, sig), term_to_chart(t, sig)).equal;
}

bool follows_path(const Chart& c, const std::vector<std::string>& path) {
  if (path.empty() || path[0].empty() || path[0][0] != '#') return false;
  std::size_t root = std::stoul(path[0].substr(1));
  if (root >= c.roots.size()) return false;
  NodeSet cur{c.roots[root]};
  for (std::size_t i = 1; i < path.size(); ++i) {
    const std::string& s = path[i];
    if (s == "divergent") return any_divergent(c, cur);
    auto slash = s.rfind('/');
    if (slash == std::string::npos) return false;
    std::string label = s.substr(0, slash), idx = s.substr(slash + 1);
    cur = successors(c, cur, label, idx == "-" ? -1 : std::stoi(idx));
    if (cur.empty()) return false;
  }
  return true;
}

}  // namespace cyc
