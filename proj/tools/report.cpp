#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "cycdt/print.hpp"

namespace cyc::report {

namespace {

std::string pos_str(const Position& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

}  // namespace

ordered_json trace_json(const Trace& tr, bool with_steps) {
  ordered_json j;
  j["start"] = print(tr.start);
  j["result"] = print(tr.final);
  j["steps"] = tr.count;
  if (with_steps) {
    ordered_json arr = ordered_json::array();
    for (auto& s : tr.steps)
      arr.push_back({{"rule", s.rule->name}, {"position", pos_str(s.position)}, {"term", print(s.after)}});
    j["trace"] = arr;
  }
  return j;
}

std::string trace_text(const Trace& tr) {
  std::ostringstream o;
  o << "     " << print(tr.start) << "\n";
  for (auto& s : tr.steps)
    o << "  => " << std::left << std::setw(6) << ("(" + s.rule->name + ")") << print(s.after) << "\n";
  return o.str();
}

ordered_json bisim_json(const BisimResult& r) {
  ordered_json j;
  j["bisimilar"] = r.equal;
  j["incomplete"] = r.incomplete;
  int nb = 0;
  for (int b : r.blocks) nb = std::max(nb, b + 1);
  j["nodes"] = r.joint.nodes.size();
  j["blocks"] = nb;
  if (!r.equal) {
    j["path"] = r.path;
    j["path_side"] = r.path_side;
  }
  return j;
}

ordered_json proof_json(const ProofResult& r) {
  ordered_json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.verdict == Verdict::Refused) {
    j["reason"] = r.reason;
    if (r.witness) j["witness"] = print(r.witness);
    return j;
  }
  j["type"] = show_types(r.type);
  j["left"] = print(r.left.final);
  j["right"] = print(r.right.final);
  j["bisim"] = bisim_json(r.bisim);
  return j;
}

std::string proof_text(const ProofResult& r) {
  std::ostringstream o;
  o << verdict_name(r.verdict);
  if (r.verdict == Verdict::Refused) {
    o << ": " << r.reason;
    if (r.witness) o << " at " << print(r.witness);
    o << "\n";
    return o.str();
  }
  o << "\n  left  => " << print(r.left.final) << "\n  right => " << print(r.right.final) << "\n";
  if (r.incomplete) o << "  (charts contain uninterpreted subterms)\n";
  if (r.verdict == Verdict::NotEqual) {
    o << "  distinguishing trace (side " << r.bisim.path_side << "):";
    if (r.bisim.path.empty()) o << " none, the charts differ in branching only";
    for (auto& s : r.bisim.path) o << " " << s;
    o << "\n";
  }
  return o.str();
}

ordered_json gs_json(const GSReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["type_order_well_founded"] = r.type_order_wf;
  j["constructors_positive"] = r.constructors_positive;
  j["non_positive"] = r.non_positive;
  j["precedence_well_founded"] = r.precedence_wf;
  ordered_json rules = ordered_json::array();
  for (auto& x : r.rules) {
    ordered_json e;
    e["rule"] = x.rule;
    e["system"] = x.system;
    e["instance"] = x.instance;
    e["pass"] = x.pass;
    if (x.pass) {
      e["clauses"] = x.clauses;
    } else if (x.failure) {
      e["failure"] = {{"term", x.failure->term}, {"clause", x.failure->clause}, {"detail", x.failure->detail}};
    }
    rules.push_back(e);
  }
  j["rules"] = rules;
  return j;
}

std::string gs_text(const GSReport& r) {
  std::ostringstream o;
  std::size_t w = 8;
  for (auto& x : r.rules) w = std::max(w, x.instance.size());
  o << std::left << std::setw(10) << "rule" << std::setw(static_cast<int>(w) + 2) << "instance" << std::setw(6)
    << "ok" << "clauses\n";
  std::size_t passed = 0;
  for (auto& x : r.rules) {
    o << std::setw(10) << x.rule << std::setw(static_cast<int>(w) + 2) << x.instance << std::setw(6)
      << (x.pass ? "pass" : "FAIL");
    if (x.pass) {
      for (std::size_t i = 0; i < x.clauses.size(); ++i) o << (i ? "," : "") << "(" << x.clauses[i] << ")";
      ++passed;
    } else if (x.failure) {
      o << "clause (" << x.failure->clause << ") fails at " << x.failure->term << ": " << x.failure->detail;
    }
    o << "\n";
  }
  o << "type order well-founded: " << (r.type_order_wf ? "yes" : "no") << "\n";
  o << "constructors positive: " << (r.constructors_positive ? "yes" : "no");
  for (auto& t : r.non_positive) o << " " << t;
  o << "\n";
  o << "precedence well-founded: " << (r.precedence_wf ? "yes" : "no") << "\n";
  o << "rules passing: " << passed << "/" << r.rules.size() << "\n";
  o << "verdict: " << (r.pass ? "terminating (General Schema satisfied)" : "not certified") << "\n";
  return o.str();
}

ordered_json rule_json(const RewriteRule& r) {
  return {{"rule", r.name},  {"system", r.system}, {"instance", r.instance},
          {"lhs", print(r.lhs)}, {"rhs", print(r.rhs)}, {"guard", r.guard}};
}

std::string rule_text(const RewriteRule& r) {
  std::string s = "(" + r.name + ") " + print(r.lhs) + "  ->  " + print(r.rhs);
  if (!r.guard.empty()) s += "   [" + r.guard + "]";
  return s + "   {" + r.instance + "}";
}

}  // namespace cyc::report
