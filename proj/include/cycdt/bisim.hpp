#pragma once

#include <string>
#include <vector>

#include "cycdt/signature.hpp"
#include "cycdt/term.hpp"

namespace cyc {

struct ChartEdge {
  std::string label;  // constructor name, quoted literal, or an uninterpreted "?..." label
  std::vector<int> children;
};

struct ChartNode {
  TypeName type;
  bool divergent = false;
  std::vector<ChartEdge> edges;
};

struct Chart {
  std::vector<ChartNode> nodes;
  std::vector<int> roots;
  TypeSeq root_types;
  bool incomplete = false;  // free variables or stuck subterms became uninterpreted labels
};

// Translate a term into its chart. Free variables and non-value subterms
// become uninterpreted labels; metavariables are rejected.
Chart term_to_chart(const Term& t, const Signature& sig);

// Coarsest stable partition of a chart's nodes; `rounds` receives the block
// assignment after each refinement round when non-null.
std::vector<int> coarsest_partition(const Chart& c, std::vector<std::vector<int>>* rounds = nullptr);

// Disjoint union; nodes of b are shifted by a.nodes.size().
Chart chart_union(const Chart& a, const Chart& b);

struct BisimResult {
  bool equal = false;
  bool incomplete = false;
  std::vector<int> blocks;  // partition of the union chart
  Chart joint;              // the union chart
  // When not equal: a trace of (label/child) steps that one side can follow
  // and the other cannot; empty when the charts differ only in branching.
  std::vector<std::string> path;
  int path_side = 0;  // 1 or 2: chart that has the trace
};

BisimResult bisimilar(const Chart& a, const Chart& b);
bool eq_mod_bisim(const Term& s, const Term& t, const Signature& sig);

// Whether `path` (as produced above) can be followed from the roots of c.
bool follows_path(const Chart& c, const std::vector<std::string>& path);

}  // namespace cyc
