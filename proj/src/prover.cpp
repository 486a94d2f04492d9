#include "cycdt/prover.hpp"

#include "cycdt/typing.hpp"

namespace cyc {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::Refused: return "Refused";
  }
  return "?";
}

ProofResult prove(const Term& s, const Term& t, const RuleSet& foldr, std::size_t fuel) {
  ProofResult r;
  TypeSeq ts = type_of(s), tt = type_of(t);
  if (ts != tt) throw TypeError("prove: sides have types " + show_types(ts) + " and " + show_types(tt));
  r.type = ts;
  const char* side[] = {"left", "right"};
  const Term* terms[] = {&s, &t};
  for (int i = 0; i < 2; ++i) {
    if (auto w = open_fold_witness(*terms[i])) {
      r.reason = std::string(side[i]) + " side has a fold whose structure terms mention a free variable";
      r.witness = *w;
      return r;
    }
  }
  r.left = normalize(s, foldr, fuel);
  r.right = normalize(t, foldr, fuel);
  const Trace* traces[] = {&r.left, &r.right};
  for (int i = 0; i < 2; ++i) {
    if (auto w = bad_subterm(traces[i]->final)) {
      r.reason = std::string(side[i]) + " side is a bad term";
      r.witness = *w;
      return r;
    }
  }
  const Signature& sig = foldr.signature();
  r.bisim = bisimilar(term_to_chart(r.left.final, sig), term_to_chart(r.right.final, sig));
  r.incomplete = r.bisim.incomplete;
  r.verdict = r.bisim.equal ? Verdict::Equal : Verdict::NotEqual;
  return r;
}

BisimCheck bisim_eval(const Term& s, const Term& t, const RuleSet& rules, std::size_t fuel) {
  TypeSeq ts = type_of(s), tt = type_of(t);
  if (ts != tt) throw TypeError("bisim: sides have types " + show_types(ts) + " and " + show_types(tt));
  BisimCheck r;
  r.left = normalize(s, rules, fuel);
  r.right = normalize(t, rules, fuel);
  const Signature& sig = rules.signature();
  r.bisim = bisimilar(term_to_chart(r.left.final, sig), term_to_chart(r.right.final, sig));
  return r;
}

}  // namespace cyc
