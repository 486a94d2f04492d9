#pragma once

#include <string>
#include <vector>

#include "cycdt/surface.hpp"

namespace cyc::lex {

enum class Tok {
  Ident,
  Num,
  Str,
  Op,      // symbolic infix operator, e.g. ::, +, |, &&
  LParen,
  RParen,
  LAngle,
  RAngle,
  LBrack,
  RBrack,
  Comma,
  Dot,
  Semi,
  Colon,
  Arrow,
  Eq,
  Tilde,
  At,
  End
};

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(const std::string& src);
const char* tok_name(Tok t);

}  // namespace cyc::lex
