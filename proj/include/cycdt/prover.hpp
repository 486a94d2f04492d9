#pragma once

#include <string>

#include "cycdt/bisim.hpp"
#include "cycdt/rewrite.hpp"

namespace cyc {

enum class Verdict { Equal, NotEqual, Refused };
const char* verdict_name(Verdict v);

struct ProofResult {
  Verdict verdict = Verdict::Refused;
  std::string reason;  // for Refused: which side and why
  Term witness;        // offending subterm when Refused
  TypeSeq type;
  Trace left, right;   // FOLDr normalisation of both sides
  BisimResult bisim;   // comparison of the normal forms
  bool incomplete = false;
};

// Normalise both sides with FOLDr and compare the normal forms modulo
// bisimulation; inputs outside the good-term set are refused.
ProofResult prove(const Term& s, const Term& t, const RuleSet& foldr, std::size_t fuel = default_fuel());

// Evaluate both sides with `rules` (typically FOLDr+SIMP) and compare the
// results modulo bisimulation. No domain check; `bisim.incomplete` reports
// uninterpreted subterms.
struct BisimCheck {
  Trace left, right;
  BisimResult bisim;
};
BisimCheck bisim_eval(const Term& s, const Term& t, const RuleSet& rules, std::size_t fuel = default_fuel());

}  // namespace cyc
