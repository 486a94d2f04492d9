#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycdt/term.hpp"

namespace cyc {

struct DatatypeDecl {
  TypeName name;
  std::vector<const Symbol*> ctors;
  const Symbol* br_unit = nullptr;
  const Symbol* br_branch = nullptr;

  bool has_axbr() const { return br_unit != nullptr; }
};

// Base types, constructors and the lazily created fold instances. Symbols
// live as long as the signature; terms hold raw pointers into it.
class Signature {
 public:
  static constexpr const char* kString = "String";

  bool has_type(const TypeName& t) const;
  bool is_primitive(const TypeName& t) const { return primitives_.count(t) > 0; }
  bool is_datatype(const TypeName& t) const { return types_.count(t) > 0; }
  const DatatypeDecl& datatype(const TypeName& t) const;
  const DatatypeDecl* find_datatype(const TypeName& t) const;
  const std::vector<TypeName>& datatype_order() const { return order_; }
  std::vector<TypeName> base_types() const;

  void add_primitive(const TypeName& t);
  DatatypeDecl& add_datatype(const TypeName& t);
  const Symbol* add_ctor(const TypeName& type, const std::string& name, TypeSeq args, bool infix);
  void set_axbr(const TypeName& type, const std::string& unit, const std::string& branch);

  // All constructors with the given surface name (names may be overloaded
  // across datatypes, e.g. `nil` and `+`).
  std::vector<const Symbol*> ctors_named(const std::string& name) const;
  const Symbol* ctor(const TypeName& type, const std::string& name) const;

  // fold^c_{b..}, created on first request.
  const Symbol* fold(const TypeName& source, const TypeSeq& target);
  const Symbol* find_fold(const TypeName& source, const TypeSeq& target) const;
  std::vector<const Symbol*> folds() const;

  // Number of recursive arguments (of the datatype's own type) of a constructor.
  static int recursive_args(const Symbol* ctor);
  // Binder types of the structure term for `ctor` in fold^c_{target}:
  // non-recursive argument types first, then one copy of target per
  // recursive argument.
  static TypeSeq case_binders(const Symbol* ctor, const TypeSeq& target);

 private:
  std::map<TypeName, DatatypeDecl> types_;
  std::vector<TypeName> order_;
  std::vector<TypeName> primitives_order_;
  std::map<TypeName, bool> primitives_;
  std::deque<Symbol> symbols_;
  std::map<std::pair<TypeName, TypeSeq>, const Symbol*> folds_;
};

}  // namespace cyc
