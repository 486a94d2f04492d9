#include <doctest.h>

#include "properties.hpp"

using namespace cyc::test;

namespace {

void expect(const PropertyResult& r, int min_cases) {
  CAPTURE(r.name);
  MESSAGE(r.name << ": " << r.cases << " cases, " << r.skipped << " skipped, " << r.seconds << " s");
  if (r.failures) MESSAGE("first failure: " << r.first_failure);
  CHECK(r.cases >= min_cases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("normal forms do not depend on the strategy") { expect(strategy_independence(1000, 101), 1000); }
TEST_CASE("steps preserve types") { expect(subject_reduction(1000, 102), 1000); }
TEST_CASE("axiom scheme instances are bisimilar") { expect(axiom_instances(100, 103), 1000); }
TEST_CASE("partition refinement matches the naive oracle") { expect(partition_oracle(1000, 104), 1000); }
TEST_CASE("folds preserve bisimilarity") { expect(fold_preserves_bisim(1000, 105), 900); }
TEST_CASE("folds over an enclosing cycle variable are refused") { expect(bad_term_refusal(1000, 106), 1000); }
TEST_CASE("good terms are closed under FOLDr steps") { expect(good_term_closure(1000, 107), 1000); }
