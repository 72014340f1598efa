#include <cstdint>
#include <string>
#include <vector>

#include "alea/error.hpp"
#include "alea/frontend.hpp"
#include "alea/number.hpp"

namespace alea {

namespace {

// Decodes one UTF-8 code point starting at i; advances i past it.
char32_t decode_utf8(const std::string& s, std::size_t& i, SourcePos pos) {
  const auto byte = [&](std::size_t j) -> std::uint8_t {
    return static_cast<std::uint8_t>(s[j]);
  };
  std::uint8_t b0 = byte(i);
  std::size_t need = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    i += 1;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    throw ParseError("invalid UTF-8 byte", pos);
  }
  for (std::size_t k = 1; k <= need; ++k) {
    if (i + k >= s.size() || (byte(i + k) & 0xC0) != 0x80) {
      throw ParseError("truncated UTF-8 sequence", pos);
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  i += need + 1;
  return cp;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Rational power_of_ten(std::size_t k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return Rational(p);
}

}  // namespace

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::uint32_t line = 1;
  std::uint32_t col = 1;

  const auto push = [&](Tok kind, SourcePos pos) {
    out.push_back(Token{kind, "", Rational(0), pos});
  };

  while (i < src.size()) {
    SourcePos pos{line, col};
    char c = src[i];

    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }

    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back(Token{Tok::Ident, src.substr(i, j - i), Rational(0), pos});
      col += static_cast<std::uint32_t>(j - i);
      i = j;
      continue;
    }

    if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      std::string digits = src.substr(i, j - i);
      Rational value;
      // A '.' continues the literal only when a digit follows; "1..5"
      // leaves the dots for the range operator.
      if (j + 1 < src.size() && src[j] == '.' && is_digit(src[j + 1])) {
        std::size_t f = j + 1;
        while (f < src.size() && is_digit(src[f])) ++f;
        std::string frac = src.substr(j + 1, f - j - 1);
        value = Rational(mpz_class(digits + frac, 10)) / power_of_ten(frac.size());
        value.canonicalize();
        j = f;
      } else {
        value = Rational(mpz_class(digits, 10));
      }
      out.push_back(Token{Tok::Number, "", value, pos});
      col += static_cast<std::uint32_t>(j - i);
      i = j;
      continue;
    }

    // Multi-byte operators (Unicode spellings).
    if (static_cast<unsigned char>(c) >= 0x80) {
      std::size_t j = i;
      char32_t cp = decode_utf8(src, j, pos);
      Tok kind;
      switch (cp) {
        case 0x27E8: kind = Tok::LBag; break;       // mathematical left angle
        case 0x27E9: kind = Tok::RBag; break;
        case 0x2190: kind = Tok::LeftArrow; break;
        case 0x2192: kind = Tok::Arrow; break;
        case 0x2227: kind = Tok::And; break;
        case 0x2228: kind = Tok::Or; break;
        case 0x00AC: kind = Tok::Not; break;
        case 0x2264: kind = Tok::Le; break;
        case 0x2265: kind = Tok::Ge; break;
        case 0x2260: kind = Tok::Ne; break;
        default:
          throw ParseError("unexpected character", pos);
      }
      push(kind, pos);
      i = j;
      ++col;
      continue;
    }

    // ASCII operators, longest spelling first.
    const auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    Tok kind;
    std::size_t len = 1;
    if (two('<', '{')) {
      kind = Tok::LBag;
      len = 2;
    } else if (two('}', '>')) {
      kind = Tok::RBag;
      len = 2;
    } else if (two('<', '-')) {
      kind = Tok::LeftArrow;
      len = 2;
    } else if (two('<', '=')) {
      kind = Tok::Le;
      len = 2;
    } else if (two('>', '=')) {
      kind = Tok::Ge;
      len = 2;
    } else if (two('-', '>')) {
      kind = Tok::Arrow;
      len = 2;
    } else if (two(':', '=')) {
      kind = Tok::Assign;
      len = 2;
    } else if (two('.', '.')) {
      kind = Tok::DotDot;
      len = 2;
    } else if (two('/', '/')) {
      kind = Tok::SlashSlash;
      len = 2;
    } else if (two('/', '\\')) {
      kind = Tok::And;
      len = 2;
    } else if (two('\\', '\\')) {
      kind = Tok::Backslash;
      len = 2;
    } else if (two('\\', '/')) {
      kind = Tok::Or;
      len = 2;
    } else if (two('!', '=')) {
      kind = Tok::Ne;
      len = 2;
    } else {
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semicolon; break;
        case ':': kind = Tok::Colon; break;
        case '?': kind = Tok::Question; break;
        case '|': kind = Tok::Bar; break;
        case '.': kind = Tok::Dot; break;
        case '#': kind = Tok::Hash; break;
        case '@': kind = Tok::At; break;
        case '~': kind = Tok::Tilde; break;
        case '_': kind = Tok::Underscore; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '\\': kind = Tok::Backslash; break;
        case '!': kind = Tok::Not; break;
        case '=': kind = Tok::Eq; break;
        case '<': kind = Tok::Lt; break;
        case '>': kind = Tok::Gt; break;
        default:
          throw ParseError("unexpected character", pos);
      }
    }
    push(kind, pos);
    i += len;
    col += static_cast<std::uint32_t>(len);
    continue;
  }

  out.push_back(Token{Tok::End, "", Rational(0), SourcePos{line, col}});
  return out;
}

}  // namespace alea
