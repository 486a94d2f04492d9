#include <CLI11.hpp>
#include <iostream>

#include "cycdt/print.hpp"
#include "cycdt/surface.hpp"
#include "report.hpp"

using namespace cyc;
using report::ordered_json;

namespace {

struct Options {
  std::string file;
  bool json = false;
  bool trace = false;
  bool foldr_only = false;
  bool with_fixpoint = false;
  bool dump = false;
  int bound = 2;
};

ordered_json header(const std::string& cmd, const std::string& file) {
  return {{"schema", 1}, {"command", cmd}, {"file", file}};
}

void emit(const Options& o, const ordered_json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::vector<const ElabDirective*> directives(const Program& p, Directive::Kind k) {
  std::vector<const ElabDirective*> r;
  for (auto& d : p.directives)
    if (d.kind == k) r.push_back(&d);
  return r;
}

int cmd_check(const Options& o) {
  Program p = load_file(o.file);
  ordered_json j = header("check", o.file);
  std::string text;
  ordered_json types = ordered_json::array();
  for (auto& t : p.sig->datatype_order()) {
    const auto& d = p.sig->datatype(t);
    std::string line = "ctype " + t + ":";
    ordered_json ctors = ordered_json::array();
    for (auto* c : d.ctors) {
      line += " " + c->name;
      ctors.push_back(c->name);
    }
    if (d.has_axbr()) line += " with AxBr(" + d.br_unit->name + ", " + d.br_branch->name + ")";
    text += line + "\n";
    types.push_back({{"name", t}, {"constructors", ctors}, {"axbr", d.has_axbr()}});
  }
  ordered_json funs = ordered_json::array();
  for (auto& n : p.fun_order) {
    const FunInfo& f = p.funs.at(n);
    std::string ty = show_types(f.param_types) + " -> " + show_types(f.result);
    text += "fun " + n + " : " + ty + "\n";
    funs.push_back({{"name", n}, {"type", ty}});
  }
  ordered_json dirs = ordered_json::array();
  for (auto& d : p.directives) {
    text += d.text + " : " + show_types(d.type) + "\n";
    dirs.push_back({{"directive", d.text}, {"type", show_types(d.type)}});
  }
  text += "ok\n";
  j["datatypes"] = types;
  j["functions"] = funs;
  j["directives"] = dirs;
  j["ok"] = true;
  emit(o, j, text);
  return 0;
}

int cmd_eval(const Options& o) {
  Program p = load_file(o.file);
  RuleSet rules = o.foldr_only ? RuleSet::foldr(p.sig) : RuleSet::foldr_simp(p.sig);
  ordered_json j = header("eval", o.file);
  j["rules"] = o.foldr_only ? "FOLDr" : "FOLDr+SIMP";
  ordered_json res = ordered_json::array();
  std::string text;
  for (auto* d : directives(p, Directive::Eval)) {
    Trace tr = normalize(d->lhs, rules, default_fuel(), o.trace);
    ordered_json e{{"directive", d->text}};
    e.update(report::trace_json(tr, o.trace));
    res.push_back(e);
    if (o.trace)
      text += d->text + "\n" + report::trace_text(tr) + "  (" + std::to_string(tr.count) + " steps)\n";
    else
      text += print(tr.final) + "\n";
  }
  j["results"] = res;
  emit(o, j, text);
  return 0;
}

int verdict_code(Verdict v) { return v == Verdict::Equal ? 0 : v == Verdict::NotEqual ? 1 : 2; }

int cmd_prove(const Options& o) {
  Program p = load_file(o.file);
  RuleSet foldr = RuleSet::foldr(p.sig);
  ordered_json j = header("prove", o.file);
  ordered_json res = ordered_json::array();
  std::string text;
  int code = 0;
  for (auto* d : directives(p, Directive::Prove)) {
    ProofResult r = prove(d->lhs, d->rhs, foldr);
    code = std::max(code, verdict_code(r.verdict));
    ordered_json e{{"directive", d->text}};
    e.update(report::proof_json(r));
    res.push_back(e);
    text += d->text + "\n" + report::proof_text(r);
  }
  j["results"] = res;
  emit(o, j, text);
  return code;
}

int cmd_bisim(const Options& o) {
  Program p = load_file(o.file);
  RuleSet rules = RuleSet::foldr_simp(p.sig);
  ordered_json j = header("bisim", o.file);
  ordered_json res = ordered_json::array();
  std::string text;
  int code = 0;
  for (auto* d : directives(p, Directive::Bisim)) {
    BisimCheck r = bisim_eval(d->lhs, d->rhs, rules);
    if (!r.bisim.equal) code = 1;
    ordered_json e{{"directive", d->text}, {"left", print(r.left.final)}, {"right", print(r.right.final)}};
    e.update(report::bisim_json(r.bisim));
    res.push_back(e);
    text += d->text + "\n" + (r.bisim.equal ? "true" : "false");
    if (r.bisim.incomplete) text += " (charts contain uninterpreted subterms)";
    text += "\n";
  }
  j["results"] = res;
  emit(o, j, text);
  return code;
}

std::vector<RewriteRule> system_rules(const Program& p, const Options& o) {
  RuleSet rs = RuleSet::foldr_simp(p.sig);
  auto rules = rs.enumerate(o.bound);
  if (o.with_fixpoint)
    for (auto& t : p.sig->datatype_order()) rules.push_back(fixpoint_rule(t));
  return rules;
}

int cmd_gscheck(const Options& o) {
  Program p = load_file(o.file);
  auto rules = system_rules(p, o);
  GSReport r = check_system(rules, *p.sig);
  ordered_json j = header("gscheck", o.file);
  j["bound"] = o.bound;
  j.update(report::gs_json(r));
  emit(o, j, report::gs_text(r));
  return r.pass ? 0 : 1;
}

int cmd_rules(const Options& o) {
  Program p = load_file(o.file);
  auto rules = system_rules(p, o);
  ordered_json j = header("rules", o.file);
  j["bound"] = o.bound;
  ordered_json arr = ordered_json::array();
  std::string text;
  std::map<std::string, int> counts;
  for (auto& r : rules) {
    arr.push_back(report::rule_json(r));
    if (o.dump) text += report::rule_text(r) + "\n";
    ++counts[r.system + " (" + r.name + ")"];
  }
  if (!o.dump) {
    for (auto& [k, n] : counts) text += k + ": " + std::to_string(n) + "\n";
    text += "total: " + std::to_string(rules.size()) + "\n";
  }
  j["rules"] = arr;
  emit(o, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycdt: cyclic datatypes, fold evaluation, bisimulation and termination checks"};
  app.require_subcommand(1);
  Options o;
  auto file_opt = [&](CLI::App* sc) { sc->add_option("FILE", o.file, "source file (.cyc)")->required(); };
  auto json_opt = [&](CLI::App* sc) { sc->add_flag("--json", o.json, "machine-readable output"); };

  auto* check = app.add_subcommand("check", "parse and type-check a file");
  file_opt(check);
  json_opt(check);
  auto* eval = app.add_subcommand("eval", "normalise every eval directive");
  file_opt(eval);
  json_opt(eval);
  eval->add_flag("--foldr-only", o.foldr_only, "use FOLDr without SIMP");
  eval->add_flag("--trace", o.trace, "print every rewrite step");
  auto* provec = app.add_subcommand("prove", "decide every prove directive");
  file_opt(provec);
  json_opt(provec);
  auto* bisim = app.add_subcommand("bisim", "decide every bisim directive");
  file_opt(bisim);
  json_opt(bisim);
  auto* gs = app.add_subcommand("gscheck", "General Schema check of FOLDr+SIMP for the file's signature");
  file_opt(gs);
  json_opt(gs);
  gs->add_flag("--with-fixpoint", o.with_fixpoint, "add the unfolding rule cy(x.m[x]) -> m[cy(x.m[x])]");
  gs->add_option("--bound", o.bound, "largest width and arity of enumerated instances")->check(CLI::Range(1, 4));
  auto* rules = app.add_subcommand("rules", "list the rule instances for the file's signature");
  file_opt(rules);
  json_opt(rules);
  rules->add_flag("--dump", o.dump, "print every instance");
  rules->add_flag("--with-fixpoint", o.with_fixpoint, "include the unfolding fixture");
  rules->add_option("--bound", o.bound, "largest width and arity of enumerated instances")->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*eval) return cmd_eval(o);
    if (*provec) return cmd_prove(o);
    if (*bisim) return cmd_bisim(o);
    if (*gs) return cmd_gscheck(o);
    if (*rules) return cmd_rules(o);
  } catch (const SyntaxError& e) {
    std::cerr << o.file << ":" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << o.file << ": error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
