#include "lexer.hpp"

#include <cctype>
#include <cstring>

namespace cyc {

SyntaxError::SyntaxError(Pos p, const std::string& msg)
    : Error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg), pos(p) {}

namespace lex {

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Num: return "number";
    case Tok::Str: return "string";
    case Tok::Op: return "operator";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Eq: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::At: return "'@'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

bool op_char(char c) { return std::strchr("+|&*/\\^!$:", c) != nullptr && c != 0; }

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto adv = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto starts = [&](const char* s) { return src.compare(i, std::strlen(s), s) == 0; };
  // Unicode spellings used in display notation.
  const std::pair<const char*, const char*> uni[] = {
      {"\xE2\x88\xB7", "::"},  // ∷
      {"\xE2\x88\xA7", "&&"},  // ∧
      {"\xE2\x88\xA8", "||"},  // ∨
      {"\xE2\x86\x92", "->"},  // →
      {"\xE2\x9F\xA8", "<"},   // ⟨
      {"\xE2\x9F\xA9", ">"},   // ⟩
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv();
      continue;
    }
    if (starts("--") || starts("//")) {
      while (i < src.size() && src[i] != '\n') adv();
      continue;
    }
    Pos p{line, col};
    std::size_t off = i;
    bool matched = false;
    for (auto& [u, a] : uni) {
      if (starts(u)) {
        std::string s = a;
        Tok k = s == "->" ? Tok::Arrow : s == "<" ? Tok::LAngle : s == ">" ? Tok::RAngle : Tok::Op;
        out.push_back({k, s, p, off});
        adv(std::strlen(u));
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size()) {
        char d = src[j];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'' || d == '?') {
          ++j;
        } else if (d == '-' && j + 1 < src.size() &&
                   std::isalpha(static_cast<unsigned char>(src[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      out.push_back({Tok::Ident, src.substr(i, j - i), p, off});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Num, src.substr(i, j - i), p, off});
      adv(j - i);
      continue;
    }
    if (c == '"') {
      std::string s;
      adv();
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) adv();
        if (src[i] == '\n') throw SyntaxError(p, "unterminated string literal");
        s += src[i];
        adv();
      }
      if (i >= src.size()) throw SyntaxError(p, "unterminated string literal");
      adv();
      out.push_back({Tok::Str, s, p, off});
      continue;
    }
    if (starts("->")) {
      out.push_back({Tok::Arrow, "->", p, off});
      adv(2);
      continue;
    }
    if (starts("::")) {
      std::size_t j = i + 2;
      while (j < src.size() && op_char(src[j])) ++j;
      out.push_back({Tok::Op, src.substr(i, j - i), p, off});
      adv(j - i);
      continue;
    }
    if (op_char(c) && c != ':') {
      std::size_t j = i;
      while (j < src.size() && op_char(src[j]) && src[j] != ':') ++j;
      out.push_back({Tok::Op, src.substr(i, j - i), p, off});
      adv(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case ';': k = Tok::Semi; break;
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Eq; break;
      case '~': k = Tok::Tilde; break;
      case '@': k = Tok::At; break;
      default:
        throw SyntaxError(p, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), p, off});
    adv();
  }
  out.push_back({Tok::End, "", {line, col}, src.size()});
  return out;
}

}  // namespace lex
}  // namespace cyc
