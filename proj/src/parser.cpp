#include <set>

#include "cycdt/print.hpp"
#include "cycdt/surface.hpp"
#include "lexer.hpp"

namespace cyc {

using lex::Tok;
using lex::Token;

namespace {

const std::set<std::string> kItemKeywords = {"ctype", "fun", "spec", "eval", "prove", "bisim",
                                             "gscheck"};

class Parser {
 public:
  Parser(const std::string& src) : src_(src), toks_(lex::tokenize(src)) {}

  SourceFile file() {
    SourceFile f;
    while (!at(Tok::End)) {
      const Token& t = peek();
      if (is_kw("ctype")) {
        f.ctypes.push_back(ctype());
        f.items.push_back({Item::Ctype, f.ctypes.size() - 1});
      } else if (is_kw("fun")) {
        f.funs.push_back(fun());
        f.items.push_back({Item::Fun, f.funs.size() - 1});
      } else if (is_kw("spec")) {
        f.specs.push_back(spec());
        f.items.push_back({Item::Spec, f.specs.size() - 1});
      } else if (is_kw("eval") || is_kw("prove") || is_kw("bisim") || is_kw("gscheck")) {
        f.directives.push_back(directive());
        f.items.push_back({Item::Dir, f.directives.size() - 1});
      } else if (t.kind == Tok::Ident && peek(1).kind == Tok::Colon) {
        f.sigs.push_back(sig());
        f.items.push_back({Item::Sig, f.sigs.size() - 1});
      } else {
        fail(t, "expected a declaration or directive");
      }
    }
    check_duplicates(f);
    return f;
  }

  SPtr lone_term() {
    SPtr e = term();
    expect(Tok::End, "end of term");
    return e;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t k = 0) const {
    std::size_t j = std::min(i_ + k, toks_.size() - 1);
    return toks_[j];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool is_kw(const char* kw, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == kw;
  }
  const Token& next() {
    const Token& t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.pos, msg + " (found " + got + ")");
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what);
    return next();
  }
  void expect_kw(const char* kw) {
    if (!is_kw(kw)) fail(peek(), std::string("expected '") + kw + "'");
    next();
  }
  std::string ident(const char* what) {
    if (!at(Tok::Ident) || kItemKeywords.count(peek().text))
      fail(peek(), std::string("expected ") + what);
    return next().text;
  }

  // ---- declarations ----
  std::string type_name() { return ident("a type name"); }

  std::vector<std::string> type_list() {
    std::vector<std::string> ts;
    if (at(Tok::LParen) && peek(1).kind == Tok::RParen) {
      next();
      next();
      return ts;
    }
    ts.push_back(type_name());
    while (at(Tok::Comma)) {
      next();
      ts.push_back(type_name());
    }
    return ts;
  }

  CtypeDecl ctype() {
    CtypeDecl d;
    d.pos = peek().pos;
    expect_kw("ctype");
    d.name = type_name();
    expect_kw("where");
    while (!is_kw("with")) {
      if (at(Tok::End)) fail(peek(), "expected 'with axioms'");
      d.ctors.push_back(ctor_decl(d.name));
    }
    expect_kw("with");
    expect_kw("axioms");
    bool cy = false;
    for (;;) {
      const Token& t = peek();
      if (is_kw("AxCy")) {
        next();
        cy = true;
      } else if (is_kw("AxBr")) {
        next();
        if (d.axbr) fail(t, "duplicate AxBr clause");
        d.axbr = true;
        expect(Tok::LParen, "'('");
        d.unit = ctor_name_ref();
        expect(Tok::Comma, "','");
        d.branch = ctor_name_ref();
        expect(Tok::RParen, "')'");
      } else {
        fail(t, "expected AxCy or AxBr(unit, branch)");
      }
      if (!at(Tok::Comma)) break;
      next();
    }
    if (!cy) throw SyntaxError(d.pos, "datatype " + d.name + " must declare AxCy");
    std::set<std::string> names;
    for (auto& c : d.ctors)
      if (!names.insert(c.name).second)
        throw SyntaxError(c.pos, "duplicate constructor " + c.name);
    if (d.axbr) {
      if (!names.count(d.unit))
        throw SyntaxError(d.pos, "AxBr unit '" + d.unit + "' is not declared in " + d.name);
      if (!names.count(d.branch))
        throw SyntaxError(d.pos, "AxBr branch '" + d.branch + "' is not declared in " + d.name);
    }
    return d;
  }

  std::string ctor_name_ref() {
    const Token& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Num || t.kind == Tok::Op) return next().text;
    if (t.kind == Tok::LBrack && peek(1).kind == Tok::RBrack) {
      next();
      next();
      return "[]";
    }
    if (t.kind == Tok::LParen && peek(1).kind == Tok::Op && peek(2).kind == Tok::RParen) {
      next();
      std::string s = next().text;
      next();
      return s;
    }
    fail(t, "expected a constructor name");
  }

  CtorDecl ctor_decl(const std::string& type) {
    CtorDecl c;
    c.pos = peek().pos;
    const Token& t = peek();
    if (t.kind == Tok::Op) {
      c.name = next().text;
      c.infix = true;
    } else if (t.kind == Tok::LParen && peek(1).kind == Tok::Op && peek(2).kind == Tok::RParen) {
      next();
      c.name = next().text;
      next();
      c.infix = true;
    } else {
      c.name = ctor_name_ref();
    }
    expect(Tok::Colon, "':' after constructor name");
    std::vector<std::string> ts = type_list();
    if (at(Tok::Arrow)) {
      next();
      c.args = ts;
      c.result = type_name();
    } else {
      if (ts.size() != 1) fail(peek(), "expected '->'");
      c.result = ts[0];
    }
    if (c.result != type)
      throw SyntaxError(c.pos, "constructor " + c.name + " must return " + type);
    if (c.infix && c.args.size() != 2)
      throw SyntaxError(c.pos, "operator constructor " + c.name + " must be binary");
    return c;
  }

  FunSig sig() {
    FunSig s;
    s.pos = peek().pos;
    s.name = ident("a function name");
    expect(Tok::Colon, "':'");
    auto ts = type_list();
    if (at(Tok::Arrow)) {
      next();
      s.params = ts;
      s.result = type_list();
    } else {
      s.result = ts;
    }
    return s;
  }

  std::vector<SBinder> params() {
    std::vector<SBinder> ps;
    if (at(Tok::LParen)) {
      next();
      if (!at(Tok::RParen)) {
        for (;;) {
          SBinder b;
          b.name = ident("a parameter name");
          if (at(Tok::Colon)) {
            next();
            b.type = type_name();
          }
          ps.push_back(b);
          if (!at(Tok::Comma)) break;
          next();
        }
      }
      expect(Tok::RParen, "')'");
    } else {
      while (at(Tok::Ident) && !kItemKeywords.count(peek().text)) ps.push_back({next().text, ""});
    }
    return ps;
  }

  FunDef fun() {
    FunDef d;
    d.pos = peek().pos;
    expect_kw("fun");
    d.name = ident("a function name");
    if (at(Tok::Colon)) {
      // fun f : C -> B where  f(pattern) = rhs ...
      next();
      auto ts = type_list();
      expect(Tok::Arrow, "'->'");
      auto res = type_list();
      expect_kw("where");
      d.kind = FunDef::PrimRec;
      for (auto& t : ts) d.params.push_back({"", t});
      d.result = res;
      d.cases = equations(d.name);
      return d;
    }
    d.params = params();
    if (at(Tok::Colon)) {
      next();
      d.result = type_list();
    }
    expect(Tok::Eq, "'='");
    d.body = term();
    d.kind = d.body->kind == SExpr::Fold ? FunDef::PlainFold : FunDef::Expr;
    return d;
  }

  std::vector<Equation> equations(const std::string& name) {
    std::vector<Equation> eqs;
    while (at(Tok::Ident) && peek().text == name && peek(1).kind == Tok::LParen) {
      Equation e;
      e.pos = peek().pos;
      e.lhs = primary();
      expect(Tok::Eq, "'='");
      e.rhs = term();
      eqs.push_back(e);
    }
    if (eqs.empty()) fail(peek(), "expected an equation for " + name);
    return eqs;
  }

  SpecDef spec() {
    SpecDef s;
    s.pos = peek().pos;
    expect_kw("spec");
    s.name = ident("a function name");
    s.equations = equations(s.name);
    return s;
  }

  Directive directive() {
    Directive d;
    d.pos = peek().pos;
    std::size_t start = peek().offset;
    std::string kw = next().text;
    if (kw == "gscheck") {
      d.kind = Directive::GsCheck;
    } else if (kw == "eval") {
      d.kind = Directive::Eval;
      d.lhs = term();
    } else if (kw == "prove") {
      d.kind = Directive::Prove;
      d.lhs = term();
      expect(Tok::Eq, "'='");
      d.rhs = term();
    } else {
      d.kind = Directive::Bisim;
      d.lhs = term();
      expect(Tok::Tilde, "'~'");
      d.rhs = term();
    }
    std::size_t end = peek().offset;
    d.text = src_.substr(start, end - start);
    while (!d.text.empty() && std::isspace(static_cast<unsigned char>(d.text.back())))
      d.text.pop_back();
    return d;
  }

  void check_duplicates(const SourceFile& f) {
    std::set<std::string> types, funs;
    for (auto& c : f.ctypes)
      if (!types.insert(c.name).second) throw SyntaxError(c.pos, "duplicate ctype " + c.name);
    for (auto& d : f.funs)
      if (!funs.insert(d.name).second) throw SyntaxError(d.pos, "duplicate fun " + d.name);
    std::set<std::string> sigs;
    for (auto& s : f.sigs)
      if (!sigs.insert(s.name).second) throw SyntaxError(s.pos, "duplicate signature " + s.name);
  }

  // ---- terms ----

  // Binder lookahead: IDENT [':' TYPE] followed by '.' (or ',' when grouped).
  // Returns the number of tokens forming a binder prefix, 0 if none.
  std::size_t binder_prefix(bool allow_comma) const {
    std::size_t k = 0;
    std::size_t last_ok = 0;
    for (;;) {
      if (peek(k).kind != Tok::Ident || kItemKeywords.count(peek(k).text) ||
          peek(k).text == "fold" || peek(k).text == "cy")
        return last_ok;
      ++k;
      if (peek(k).kind == Tok::Colon && peek(k + 1).kind == Tok::Ident) k += 2;
      if (peek(k).kind == Tok::Dot) {
        ++k;
        last_ok = k;
        continue;
      }
      if (allow_comma && peek(k).kind == Tok::Comma) {
        ++k;
        continue;
      }
      return last_ok;
    }
  }

  std::vector<SBinder> binders(std::size_t ntoks) {
    std::vector<SBinder> bs;
    std::size_t stop = i_ + ntoks;
    while (i_ < stop) {
      SBinder b;
      b.name = next().text;
      if (at(Tok::Colon)) {
        next();
        b.type = next().text;
      }
      bs.push_back(b);
      next();  // ',' or '.'
    }
    return bs;
  }

  SPtr mk(SExpr::Kind k, Pos p) {
    auto e = std::make_shared<SExpr>();
    e->kind = k;
    e->pos = p;
    return e;
  }

  SPtr term() { return comp_expr(); }

  SPtr comp_expr() {
    SPtr l = infix_expr(0);
    if (at(Tok::At)) {
      Pos p = next().pos;
      SPtr r = comp_expr();
      SPtr e = mk(SExpr::Comp, p);
      e->args = {l, r};
      return e;
    }
    return l;
  }

  SPtr infix_expr(int min_prec) {
    SPtr l = primary();
    while (at(Tok::Op)) {
      std::string op = peek().text;
      int p = infix_precedence(op);
      if (p < min_prec) break;
      Pos pos = next().pos;
      SPtr r = infix_expr(infix_right_assoc(op) ? p : p + 1);
      SPtr e = mk(SExpr::Call, pos);
      e->name = op;
      e->infix = true;
      e->args = {l, r};
      l = e;
    }
    return l;
  }

  // Argument that may start with binders (fold structure terms, cy bodies).
  SPtr bound_arg(bool allow_comma) {
    Pos p = peek().pos;
    std::size_t n = binder_prefix(allow_comma);
    if (!n) return term();
    SPtr e = mk(SExpr::Lambda, p);
    e->binders = binders(n);
    e->args = {term()};
    return e;
  }

  SPtr primary() {
    const Token& t = peek();
    Pos p = t.pos;
    switch (t.kind) {
      case Tok::Num: {
        SPtr e = mk(SExpr::Num, p);
        e->num = std::stol(next().text);
        return e;
      }
      case Tok::Str: {
        SPtr e = mk(SExpr::Str, p);
        e->name = next().text;
        return e;
      }
      case Tok::LBrack: {
        next();
        expect(Tok::RBrack, "']'");
        SPtr e = mk(SExpr::Ident, p);
        e->name = "[]";
        return e;
      }
      case Tok::LAngle: {
        next();
        SPtr e = mk(SExpr::Tuple, p);
        if (!at(Tok::RAngle)) {
          e->args.push_back(term());
          while (at(Tok::Comma)) {
            next();
            e->args.push_back(term());
          }
        }
        expect(Tok::RAngle, "'>'");
        return e;
      }
      case Tok::LParen:
        return paren();
      case Tok::Ident:
        break;
      default:
        fail(t, "expected a term");
    }
    if (t.text == "cy") {
      next();
      expect(Tok::LParen, "'(' after cy");
      std::size_t n = binder_prefix(true);
      if (!n) fail(peek(), "expected binders in cy");
      SPtr e = mk(SExpr::Cy, p);
      e->binders = binders(n);
      e->args = {term()};
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.text == "fold") {
      next();
      SPtr e = mk(SExpr::Fold, p);
      expect(Tok::LParen, "'(' after fold");
      if (!at(Tok::RParen)) {
        e->args.push_back(bound_arg(false));
        while (at(Tok::Comma)) {
          next();
          e->args.push_back(bound_arg(false));
        }
      }
      expect(Tok::RParen, "')'");
      e->fold_cases = e->args.size();
      if (at(Tok::LParen) && binder_prefix_after_paren()) {
        next();
        e->fold_bound = true;
        e->binders = binders(binder_prefix(true));
        e->args.push_back(term());
        expect(Tok::Semi, "';'");
        e->args.push_back(term());
        while (at(Tok::Comma)) {
          next();
          e->args.push_back(term());
        }
        expect(Tok::RParen, "')'");
      } else {
        e->args.push_back(primary());
      }
      return e;
    }
    if (kItemKeywords.count(t.text)) fail(t, "expected a term");
    next();
    if (at(Tok::LParen)) {
      next();
      SPtr e = mk(SExpr::Call, p);
      e->name = t.text;
      if (!at(Tok::RParen)) {
        e->args.push_back(term());
        while (at(Tok::Comma)) {
          next();
          e->args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      return e;
    }
    SPtr e = mk(SExpr::Ident, p);
    e->name = t.text;
    return e;
  }

  bool binder_prefix_after_paren() {
    ++i_;
    std::size_t n = binder_prefix(true);
    --i_;
    if (!n) return false;
    // distinguish (y. t ; p) from a parenthesised lambda
    int depth = 0;
    for (std::size_t k = i_; k < toks_.size(); ++k) {
      Tok kind = toks_[k].kind;
      if (kind == Tok::LParen || kind == Tok::LAngle) ++depth;
      if (kind == Tok::RParen || kind == Tok::RAngle) {
        if (--depth == 0) return false;
      }
      if (kind == Tok::Semi && depth == 1) return true;
      if (kind == Tok::End) return false;
    }
    return false;
  }

  SPtr paren() {
    Pos p = next().pos;
    // (op)(a, b) prefix use of an operator constructor
    if (at(Tok::Op) && peek(1).kind == Tok::RParen) {
      std::string op = next().text;
      next();
      SPtr e = mk(SExpr::Call, p);
      e->name = op;
      e->infix = true;
      if (at(Tok::LParen)) {
        next();
        if (!at(Tok::RParen)) {
          e->args.push_back(term());
          while (at(Tok::Comma)) {
            next();
            e->args.push_back(term());
          }
        }
        expect(Tok::RParen, "')'");
      }
      return e;
    }
    if (std::size_t n = binder_prefix(true)) {
      SPtr e = mk(SExpr::Lambda, p);
      e->binders = binders(n);
      e->args = {term()};
      expect(Tok::RParen, "')'");
      if (!at(Tok::At)) fail(peek(), "expected '@' after a parenthesised abstraction");
      return e;
    }
    SPtr inner = term();
    if (at(Tok::Colon)) {
      next();
      SPtr e = mk(SExpr::Annot, p);
      auto ts = type_list();
      std::string s;
      for (std::size_t k = 0; k < ts.size(); ++k) s += (k ? "," : "") + ts[k];
      e->name = s;
      e->args = {inner};
      expect(Tok::RParen, "')'");
      return e;
    }
    expect(Tok::RParen, "')'");
    return inner;
  }

  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

SourceFile parse(const std::string& source) {
  Parser p(source);
  return p.file();
}

SPtr parse_term(const std::string& source) {
  Parser p(source);
  return p.lone_term();
}

}  // namespace cyc
