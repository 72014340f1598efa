#pragma once

#include <string>
#include <vector>

#include "alea/ast.hpp"
#include "alea/number.hpp"

namespace alea {

// Token kinds produced by lex(). Unicode and ASCII spellings of the same
// operator lex to the same kind (e.g. "<-" and U+2190 both give LeftArrow).
enum class Tok {
  Ident,
  Number,      // exact rational literal: integer or decimal
  LParen,
  RParen,
  LBracket,    // [
  RBracket,    // ]
  LBrace,      // {
  RBrace,      // }
  LBag,        // <{ or U+27E8
  RBag,        // }> or U+27E9
  Comma,
  Semicolon,
  Colon,
  Assign,      // :=
  Arrow,       // -> or U+2192
  LeftArrow,   // <- or U+2190
  Question,
  Bar,
  DotDot,      // ..
  Dot,
  Hash,
  At,
  Tilde,
  Underscore,
  Plus,
  Minus,
  Star,
  Slash,
  SlashSlash,  // //
  Backslash,   // \\ (remainder; a lone \ is accepted too)
  And,         // /\ or U+2227
  Or,          // \/ or U+2228
  Not,         // ! or U+00AC
  Eq,          // =
  Ne,          // != or U+2260
  Lt,
  Le,          // <= or U+2264
  Gt,
  Ge,          // >= or U+2265
  End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier spelling (Ident only)
  Rational number;   // literal value (Number only)
  SourcePos pos;
};

// Splits UTF-8 source into tokens. "--" starts a comment running to end of
// line. Whitespace separates tokens but is otherwise insignificant; note
// that maximal munch makes "x<-2" a generator arrow and "a--b" a comment.
std::vector<Token> lex(const std::string& src);

// Parses and desugars a program: zero or more "name := expr;" bindings
// followed by a result expression. A program may also end with a binding,
// in which case that binding's variable is the result.
Expr parse_program(const std::string& src);

}  // namespace alea
