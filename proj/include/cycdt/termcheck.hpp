#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycdt/rules.hpp"
#include "cycdt/signature.hpp"

namespace cyc {

// First-order arrow  args -> result  over base types; a base type when args is empty.
struct RType {
  TypeSeq args;
  TypeName result;
  std::string str() const;
};

struct RSymbol {
  std::string name;    // display name, e.g. "S", "cy^2", "@", "v_CNat"
  std::string family;  // symbols of one family share constructor status
  std::vector<RType> args;
  TypeName result;
  bool constructor = true;
  int rank = 0;  // precedence: fold and @ on top, cy^m at m, the rest at 0
};

// Signature with Var_c types, the v embeddings, width-indexed cy symbols and
// product base types.
struct RefinedSignature {
  bool var_refinement = true;
  std::set<TypeName> base_types;
  std::map<std::string, RSymbol> symbols;  // keyed by display name and type
  std::set<std::string> defined;           // families heading some left-hand side
  std::map<TypeName, bool> positive;       // per constructor result type
  // a <=_B b  when a occurs in the argument types of a constructor of b
  std::map<TypeName, std::set<TypeName>> below;

  TypeName var(const TypeName& c) const;
  static TypeName product(const TypeSeq& ts);

  // Register the symbols of the rules, mark the lhs-root families as
  // defined and recompute the type order and positivity.
  void add_rules(const std::vector<RewriteRule>& rules);
  void recompute();
  bool all_positive() const;
  std::vector<TypeName> non_positive() const;
  bool type_order_well_founded() const;
};

RefinedSignature refine_signature(const Signature& sig, bool var_refinement = true);

extern const int kTopRank;
std::string symbol_family(const Term& app);
int symbol_rank(const Term& app);
// Refined type of an application's head symbol; `meta` types metavariables.
RSymbol refined_symbol(const RefinedSignature& rs, const Term& app, const MetaContext& meta);

// Accessibility: some z[x..] with distinct bound x.. lies in Acc(t).
// `trace` receives the accessibility clauses used ("a1".."a4").
bool accessible(const std::string& z, const Term& t, const RefinedSignature& rs, const MetaContext& meta,
                std::vector<std::string>* trace = nullptr);

// t covers u: u is t with a subterm reached through abstractions and then
// function-headed positions put in place of its body. Abstraction chains
// compare uncurried.
bool covered_subterm(const Term& t, const Term& u);
bool strictly_covered(const Term& t, const Term& u);

struct GSNode {
  std::string clause;  // "1".."7"
  Term term;
  bool ok = false;
  std::string detail;
  std::vector<GSNode> children;
};

struct GSObligation {
  std::string term;
  std::string clause;
  std::string detail;
};

struct GSRuleReport {
  std::string rule, system, instance;
  bool pass = false;
  GSNode derivation;
  std::optional<GSObligation> failure;
  std::vector<std::string> clauses;  // distinct clauses used, in first-use order
};

struct GSReport {
  bool pass = false;
  bool type_order_wf = false;
  bool constructors_positive = false;
  bool precedence_wf = false;
  std::vector<TypeName> non_positive;
  std::vector<GSRuleReport> rules;
};

GSRuleReport check_rule_gs(const RewriteRule& rule, const RefinedSignature& rs);
GSReport check_system(const std::vector<RewriteRule>& rules, const Signature& sig, bool var_refinement = true);
GSReport check_system(const RuleSet& rules, int bound = 2);

// Re-evaluate every node's cited clause on its own term.
bool replay(const GSRuleReport& report, const RewriteRule& rule, const RefinedSignature& rs);

// cy(x. m[x]) -> m[cy(x. m[x])] at type c.
RewriteRule fixpoint_rule(const TypeName& c);

// Terms with internal names renamed for display.
std::string display(const Term& t);

}  // namespace cyc
