#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cycdt/signature.hpp"
#include "cycdt/term.hpp"

namespace cyc {

struct Pos {
  int line = 1, col = 1;
};

struct SyntaxError : Error {
  Pos pos;
  SyntaxError(Pos p, const std::string& msg);
};

// ---- concrete syntax tree ----

struct SBinder {
  std::string name;
  std::string type;  // optional annotation
};

struct SExpr;
using SPtr = std::shared_ptr<SExpr>;

struct SExpr {
  enum Kind { Ident, Num, Str, Call, Lambda, Tuple, Comp, Fold, Cy, Annot };
  Kind kind = Ident;
  Pos pos;
  std::string name;  // Ident / Call name / Str payload / Annot type
  long num = 0;
  bool infix = false;
  std::vector<SBinder> binders;  // Lambda, Cy, Fold structure
  std::vector<SPtr> args;        // Call args, Tuple items, Comp {lam, arg}, Cy {body},
                                 // Fold {cases..., structure, params...}, Annot {term}
  std::size_t fold_cases = 0;
  bool fold_bound = false;  // structure written as (y. t ; params)
};

struct CtorDecl {
  std::string name;
  bool infix = false;
  std::vector<std::string> args;
  std::string result;
  Pos pos;
};

struct CtypeDecl {
  std::string name;
  std::vector<CtorDecl> ctors;
  bool axbr = false;
  std::string unit, branch;
  Pos pos;
};

struct FunSig {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> result;
  Pos pos;
};

struct Equation {
  SPtr lhs, rhs;
  Pos pos;
};

struct FunDef {
  enum Kind { PlainFold, Expr, PrimRec };
  Kind kind = Expr;
  std::string name;
  std::vector<SBinder> params;
  std::vector<std::string> result;  // optional inline result annotation
  SPtr body;                        // PlainFold / Expr
  std::vector<Equation> cases;      // PrimRec
  Pos pos;
};

struct SpecDef {
  std::string name;
  std::vector<Equation> equations;
  Pos pos;
};

struct Directive {
  enum Kind { Eval, Prove, Bisim, GsCheck };
  Kind kind = Eval;
  SPtr lhs, rhs;
  Pos pos;
  std::string text;  // source text of the directive
};

struct Item {
  enum Kind { Ctype, Sig, Fun, Spec, Dir };
  Kind kind;
  std::size_t index;  // into the matching vector
};

struct SourceFile {
  std::vector<CtypeDecl> ctypes;
  std::vector<FunSig> sigs;
  std::vector<FunDef> funs;
  std::vector<SpecDef> specs;
  std::vector<Directive> directives;
  std::vector<Item> items;
};

SourceFile parse(const std::string& source);
SPtr parse_term(const std::string& source);

// ---- elaboration ----

struct FunInfo {
  std::string name;
  std::vector<std::string> params;  // parameter names
  TypeSeq param_types;
  TypeSeq result;
  FunDef::Kind kind = FunDef::Expr;
  Term body;  // over free variables named by `params`
};

struct SpecEquation {
  std::string fun;
  Term lhs, rhs;  // free variables are the equation's pattern variables
  std::map<std::string, TypeName> vars;
  std::string ctor;  // constructor at the root of the argument
};

struct ElabDirective {
  Directive::Kind kind;
  Term lhs, rhs;
  TypeSeq type;
  std::string text;
  Pos pos;
};

struct Program {
  std::shared_ptr<Signature> sig;
  std::map<std::string, FunInfo> funs;
  std::vector<std::string> fun_order;
  std::vector<SpecEquation> specs;
  std::vector<ElabDirective> directives;

  // Elaborate a standalone term against this program; free variables are
  // allowed only when listed in `vars`.
  Term term(const std::string& text, const std::optional<TypeSeq>& expected = std::nullopt,
            const std::map<std::string, TypeName>& vars = {}) const;
  Term term(const SPtr& e, const std::optional<TypeSeq>& expected = std::nullopt,
            const std::map<std::string, TypeName>& vars = {}) const;
};

std::shared_ptr<Signature> elaborate_signature(const SourceFile& file);
FunInfo elaborate_fun(const FunDef& def, const FunSig* sig, Program& prog);
Program elaborate(const SourceFile& file);
Program load_program(const std::string& source);
Program load_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace cyc
