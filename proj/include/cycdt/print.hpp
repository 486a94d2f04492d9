#pragma once

#include <string>

#include "cycdt/term.hpp"

namespace cyc {

struct PrintOptions {
  bool binder_types = false;  // print `x : T.` annotations
};

// Surface-syntax rendering; the output re-parses to an alpha-equal term
// (given binder types when the context does not determine them).
std::string print(const Term& t, const PrintOptions& opts = {});

int infix_precedence(const std::string& op);
bool infix_right_assoc(const std::string& op);
bool is_operator_name(const std::string& name);

}  // namespace cyc
