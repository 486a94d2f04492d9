#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyc {

// A base type name. Names starting with '\'' are schematic type variables
// (used only inside rule templates); the empty string means "not yet known".
using TypeName = std::string;
using TypeSeq = std::vector<TypeName>;

std::string show_types(const TypeSeq& ts);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SymKind { Ctor, Unit, Tuple, Cy, Comp, Fold };
enum class BrRole { None, Unit, Branch };

struct Symbol {
  SymKind kind = SymKind::Ctor;
  std::string name;
  // Ctor
  TypeSeq args;
  TypeName result;
  BrRole role = BrRole::None;
  bool infix = false;
  // Fold
  TypeName source;
  TypeSeq target;
  std::vector<const Symbol*> cases;

  static const Symbol* unit();
  static const Symbol* tuple();
  static const Symbol* cy();
  static const Symbol* comp();
};

enum class Tag { FVar, BVar, Abs, App, Meta, Lit };

struct Binder {
  std::string hint;
  TypeName type;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  Tag tag;
  std::string name;  // FVar name, Meta name, Lit payload
  TypeName type;     // FVar / Lit type
  int depth = 0, slot = 0;
  std::vector<Binder> binders;
  const Symbol* sym = nullptr;
  std::vector<Term> args;  // App / Meta arguments; Abs body is args[0]
  int width = 1;
  std::size_t hash = 0;
  std::size_t size = 1;

  const Term& body() const { return args[0]; }
};

// constructors
Term fvar(const std::string& name, const TypeName& type = "");
Term bvar(int depth, int slot);
Term lit(const std::string& payload, const TypeName& type);
Term meta(const std::string& name, std::vector<Term> args, int width = 1);
Term app(const Symbol* sym, std::vector<Term> args);
// Abstraction over a locally closed body whose bound variables are the free
// names `names` (closed here).
Term abs(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body);
Term abs_raw(std::vector<Binder> binders, Term body);
Term unit();
Term tuple(std::vector<Term> items);
Term cy(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body);
Term comp(const Term& lam, const Term& arg);

// Wrap a term under zero or more binders: Abs when nonempty, the body otherwise.
Term maybe_abs(std::vector<Binder> binders, const std::vector<std::string>& names, const Term& body);

bool is_app(const Term& t, SymKind k);
bool is_fold(const Term& t);
int fold_cases(const Term& t);  // number of structure arguments
int fold_params(const Term& t);
const Term& fold_structure(const Term& t);
int abs_arity(const Term& t);  // binders of an Abs, 0 otherwise

// Fresh free-variable names; never produced by the parser.
std::string fresh_name(const std::string& hint = "v");
bool is_internal_name(const std::string& n);
std::vector<std::string> fresh_names(const std::vector<Binder>& bs);

// Locally nameless plumbing.
Term open(const Term& abs_node, const std::vector<Term>& repl);
Term open_names(const Term& abs_node, const std::vector<std::string>& names,
                const std::vector<Binder>* types = nullptr);
Term close(const Term& t, const std::vector<std::string>& names);
bool locally_closed(const Term& t);

// Rebuild a node with new children (smart constructors keep tuples flat).
Term rebuild(const Term& t, std::vector<Term> args);

bool alpha_eq(const Term& s, const Term& t);
struct AlphaLess {
  bool operator()(const Term& a, const Term& b) const;
};
struct AlphaHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct AlphaEq {
  bool operator()(const Term& a, const Term& b) const { return alpha_eq(a, b); }
};

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const std::string& x, const Term& t);
std::set<std::string> metavars(const Term& t);
bool has_meta(const Term& t);

Term subst_vars(const Term& t, const std::map<std::string, Term>& bindings);

// Assignment for one metavariable: m := (binders . body).
struct MetaBinding {
  std::vector<Binder> binders;
  Term body;  // Abs when binders nonempty, otherwise a plain term
};
using MetaAssignment = std::map<std::string, MetaBinding>;
using TypeAssignment = std::map<std::string, TypeName>;

MetaBinding meta_binding(std::vector<Binder> binders, const std::vector<std::string>& names,
                         const Term& body);
// Instantiate m[args] with an assigned binding.
Term apply_binding(const MetaBinding& b, const std::vector<Term>& args);
Term subst_meta(const Term& e, const MetaAssignment& theta, const TypeAssignment* types = nullptr);

// Width of a term's TypeSeq, computed syntactically.
int width(const Term& t);

}  // namespace cyc
