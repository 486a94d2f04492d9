#pragma once

#include <cstdint>
#include <string>

namespace cyc::test {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  int skipped = 0;  // generated inputs outside the property's domain
  std::string first_failure;
  double seconds = 0;
};

// FOLDr normal forms agree under leftmost-outermost and random strategies.
PropertyResult strategy_independence(int n, std::uint64_t seed);
// Every FOLDr+SIMP step preserves the type.
PropertyResult subject_reduction(int n, std::uint64_t seed);
// Instances of the cycle and branching axiom schemes are bisimilar.
PropertyResult axiom_instances(int per_scheme, std::uint64_t seed);
// Partition refinement agrees with the naive greatest-fixpoint oracle.
PropertyResult partition_oracle(int n, std::uint64_t seed);
// Applying a fold to bisimilar values gives equal verdicts.
PropertyResult fold_preserves_bisim(int n, std::uint64_t seed);
// Folds over their enclosing cycle variable are refused.
PropertyResult bad_term_refusal(int n, std::uint64_t seed);
// FOLDr successors of good terms are good.
PropertyResult good_term_closure(int n, std::uint64_t seed);

}  // namespace cyc::test
