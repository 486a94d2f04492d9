#pragma once

#include <map>
#include <string>

#include "cycdt/term.hpp"

namespace cyc {

struct MetaArity {
  TypeSeq binders;
  TypeSeq result;
};
using MetaContext = std::map<std::string, MetaArity>;
using VarContext = std::map<std::string, TypeName>;

struct TypeError : Error {
  using Error::Error;
};

// Syntax-directed inference of the judgment  meta ; vars |- t : result.
TypeSeq infer(const MetaContext& meta, const VarContext& vars, const Term& t);

// Inference where free variables take their annotated types.
TypeSeq type_of(const Term& t, const MetaContext& meta = {});

struct RewriteRule;
// Both sides typed in the rule's contexts at the same type; returns that type.
TypeSeq check_rule(const RewriteRule& r);

}  // namespace cyc
