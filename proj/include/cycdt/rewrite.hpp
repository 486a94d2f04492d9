#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cycdt/rules.hpp"

namespace cyc {

using Position = std::vector<int>;  // argument indices from the root; an Abs body is index 0

struct Step {
  const RewriteRule* rule = nullptr;
  Position position;
  Term before, after;  // whole terms
};

struct Trace {
  std::vector<Step> steps;
  Term start;
  Term final;
  std::size_t count = 0;
};

struct FuelExhausted : Error {
  using Error::Error;
};

// Step budget: 10^6 unless the CYCDT_FUEL environment variable overrides it.
std::size_t default_fuel();

// Leftmost-outermost step; rules at one position are tried in family order.
std::optional<Step> step(const Term& t, const RuleSet& rules);
// Every one-step successor (all positions, all matching rules).
std::vector<Step> all_steps(const Term& t, const RuleSet& rules);
// Uniformly random redex position, first matching rule there.
std::optional<Step> random_step(const Term& t, const RuleSet& rules, std::mt19937_64& rng);

using Strategy = std::function<std::optional<Step>(const Term&)>;

Trace normalize(const Term& t, const RuleSet& rules, std::size_t fuel = default_fuel(), bool record = true);
Trace normalize_with(const Term& t, const Strategy& strategy, std::size_t fuel = default_fuel(),
                     bool record = true);
Term normal_form(const Term& t, const RuleSet& rules, std::size_t fuel = default_fuel());

Term subterm_at(const Term& t, const Position& p);

// Fold-free, meta-free terms.
bool is_value(const Term& t);

struct TCheck {
  bool ok = true;
  std::string reason;  // "bad" or "open-fold"
  Term witness;        // offending subterm (of the FOLDr normal form for "bad")
};

// Bad terms: the FOLDr normal form has cy(y. C[fold(e, z.s)]) with some y free in s.
std::optional<Term> bad_witness(const Term& t, const RuleSet& foldr);
bool is_bad(const Term& t, const RuleSet& foldr);
// Scan a term (no normalisation) for a stuck fold referencing a cy-bound variable.
std::optional<Term> bad_subterm(const Term& t);
// No fold structure term mentions a variable that is free in the whole term.
std::optional<Term> open_fold_witness(const Term& t);
TCheck check_T(const Term& t, const RuleSet& foldr);
bool in_T(const Term& t, const RuleSet& foldr);

}  // namespace cyc
