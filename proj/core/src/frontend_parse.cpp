#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "alea/error.hpp"
#include "alea/frontend.hpp"
#include "surface.hpp"

namespace alea::surface {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBag: return "'<{'";
    case Tok::RBag: return "'}>'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::LeftArrow: return "'<-'";
    case Tok::Question: return "'?'";
    case Tok::Bar: return "'|'";
    case Tok::DotDot: return "'..'";
    case Tok::Dot: return "'.'";
    case Tok::Hash: return "'#'";
    case Tok::At: return "'@'";
    case Tok::Tilde: return "'~'";
    case Tok::Underscore: return "'_'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::SlashSlash: return "'//'";
    case Tok::Backslash: return "'\\\\'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Not: return "'!'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_opener(Tok k) {
  return k == Tok::LParen || k == Tok::LBracket || k == Tok::LBrace || k == Tok::LBag;
}

bool is_closer(Tok k) {
  return k == Tok::RParen || k == Tok::RBracket || k == Tok::RBrace || k == Tok::RBag;
}

// FunId applied by a binary operator token; null for non-operators.
const char* op_fun(Tok k) {
  switch (k) {
    case Tok::Plus: return "+";
    case Tok::Minus: return "-";
    case Tok::Star: return "*";
    case Tok::Slash: return "/";
    case Tok::SlashSlash: return "//";
    case Tok::Backslash: return "\\\\";
    case Tok::And: return "min";
    case Tok::Or: return "max";
    case Tok::Eq: return "=";
    case Tok::Ne: return "!=";
    case Tok::Lt: return "<";
    case Tok::Le: return "<=";
    case Tok::Gt: return ">";
    case Tok::Ge: return ">=";
    default: return nullptr;
  }
}

bool is_cmp(Tok k) {
  return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Le ||
         k == Tok::Gt || k == Tok::Ge;
}

std::shared_ptr<SExpr> node(SExpr::K k, SourcePos pos) {
  auto n = std::make_shared<SExpr>();
  n->k = k;
  n->pos = pos;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : t_(toks) {}

  SP program() {
    SP b = block(Tok::End);
    expect(Tok::End);
    return b;
  }

 private:
  const std::vector<Token>& t_;
  std::size_t p_ = 0;

  const Token& cur() const { return t_[p_]; }
  Tok k() const { return t_[p_].kind; }
  Tok k1() const { return p_ + 1 < t_.size() ? t_[p_ + 1].kind : Tok::End; }
  SourcePos pos() const { return cur().pos; }
  void advance(std::size_t n = 1) { p_ += n; }

  void expect(Tok want, const char* what = nullptr) {
    if (k() != want) {
      throw ParseError(std::string("expected ") + (what ? what : tok_name(want)) +
                           ", found " + tok_name(k()),
                       pos());
    }
    advance();
  }

  std::string expect_ident(const char* what) {
    if (k() != Tok::Ident) {
      throw ParseError(std::string("expected ") + what + ", found " + tok_name(k()), pos());
    }
    std::string s = cur().text;
    advance();
    return s;
  }

  // First position of a token in `targets` at bracket depth 0, scanning
  // from `from`; stops (returning npos) at a depth-0 token in `stops`, at
  // the close of the enclosing bracket, or at the end of input.
  std::size_t find_depth0(std::size_t from, std::initializer_list<Tok> targets,
                          std::initializer_list<Tok> stops) const {
    int depth = 0;
    for (std::size_t j = from; j < t_.size(); ++j) {
      Tok x = t_[j].kind;
      if (x == Tok::End) return npos;
      if (depth == 0) {
        for (Tok t : targets) {
          if (x == t) return j;
        }
        for (Tok t : stops) {
          if (x == t) return npos;
        }
      }
      if (is_opener(x)) {
        ++depth;
      } else if (is_closer(x)) {
        if (depth == 0) return npos;
        --depth;
      }
    }
    return npos;
  }

  // -- statements ---------------------------------------------------------

  SP block(Tok stop) {
    SourcePos p0 = pos();
    auto n = node(SExpr::K::Block, p0);
    for (;;) {
      if (k() == Tok::Ident && k1() == Tok::Assign) {
        SourcePos bp = pos();
        std::string name = cur().text;
        if (name == "E") throw ParseError("E is reserved for expectations", bp);
        advance(2);
        n->fields.emplace_back(name, ternary());
        if (k() == Tok::Semicolon) {
          advance();
          if (k() == stop) break;  // trailing ';' after a final binding
          continue;
        }
        break;  // the last binding is the result
      }
      n->a = ternary();
      break;
    }
    return n;
  }

  // -- expressions, loosest binding first ----------------------------------

  SP ternary() {
    SP c = or_();
    if (k() != Tok::Question) return c;
    SourcePos qp = pos();
    advance();
    if (k() == Tok::LBrace && find_depth0(p_ + 1, {Tok::Arrow}, {}) != npos) {
      return switch_block(c, qp);
    }
    SP mid = ternary();
    expect(Tok::Colon, "':' in a conditional");
    SP els = ternary();
    auto n = node(SExpr::K::Ternary, qp);
    n->a = c;
    n->b = mid;
    n->c = els;
    return n;
  }

  SP or_() {
    SP e = and_();
    while (k() == Tok::Or) {
      SourcePos p0 = pos();
      advance();
      e = binary("max", e, and_(), p0);
    }
    return e;
  }

  SP and_() {
    SP e = cmp();
    while (k() == Tok::And) {
      SourcePos p0 = pos();
      advance();
      e = binary("min", e, cmp(), p0);
    }
    return e;
  }

  SP cmp() {
    SP l = add();
    if (!is_cmp(k())) return l;
    const char* op = op_fun(k());
    SourcePos p0 = pos();
    advance();
    SP r = add();
    if (is_cmp(k())) throw ParseError("comparisons do not chain", pos());
    return binary(op, l, r, p0);
  }

  SP add() {
    SP e = mul();
    for (;;) {
      if (k() != Tok::Plus && k() != Tok::Minus) return e;
      const char* op = op_fun(k());
      SourcePos p0 = pos();
      advance();
      e = binary(op, e, mul(), p0);
    }
  }

  SP mul() {
    SP e = unary();
    for (;;) {
      if (k() != Tok::Star && k() != Tok::Slash && k() != Tok::SlashSlash &&
          k() != Tok::Backslash) {
        return e;
      }
      const char* op = op_fun(k());
      SourcePos p0 = pos();
      advance();
      e = binary(op, e, unary(), p0);
    }
  }

  SP unary() {
    SourcePos p0 = pos();
    if (k() == Tok::Minus) {
      advance();
      auto n = node(SExpr::K::Unary, p0);
      n->name = "-";
      n->a = unary();
      return n;
    }
    if (k() == Tok::Not) {
      advance();
      auto n = node(SExpr::K::Unary, p0);
      n->name = "not";
      n->a = unary();
      return n;
    }
    if (k() == Tok::Tilde) {
      advance();
      std::string name = expect_ident("a distribution name after '~'");
      if (name == "choose") {
        return choose_block(p0);
      }
      if (!is_opener(k())) {
        throw ParseError("the argument of ~" + name + " must be bracketed", pos());
      }
      auto n = node(SExpr::K::Draw, p0);
      n->name = name;
      n->a = postfix();
      return n;
    }
    if (k() == Tok::At) {
      advance();
      auto n = node(SExpr::K::Tag, p0);
      n->name = expect_ident("a case name after '@'");
      if (is_opener(k())) n->a = postfix();
      return n;
    }
    return postfix();
  }

  SP postfix() {
    SP e = primary();
    bool callable = e->k == SExpr::K::Var || e->k == SExpr::K::QuotedOp;
    for (;;) {
      if (k() == Tok::Dot) {
        SourcePos p0 = pos();
        advance();
        auto n = node(SExpr::K::Select, p0);
        n->a = e;
        if (k() == Tok::Hash) {
          advance();
          if (k() != Tok::Number) {
            throw ParseError("expected a field index after '#'", pos());
          }
          const Rational& q = cur().number;
          if (q.get_den() != 1 || q <= 0 || q.get_num() > 4294967295UL) {
            throw ParseError("field index out of range", pos());
          }
          n->positional_sel = true;
          n->index = static_cast<std::uint32_t>(q.get_num().get_ui());
          advance();
        } else {
          n->name = expect_ident("a field name after '.'");
        }
        e = n;
        callable = false;
        continue;
      }
      if (callable && is_opener(k())) {
        auto n = node(SExpr::K::Call, e->pos);
        n->name = e->name;
        n->a = primary();
        e = n;
        callable = false;
        continue;
      }
      return e;
    }
  }

  SP primary() {
    SourcePos p0 = pos();
    switch (k()) {
      case Tok::Number: {
        auto n = node(SExpr::K::Num, p0);
        n->num = cur().number;
        advance();
        return n;
      }
      case Tok::Ident: {
        auto n = node(SExpr::K::Var, p0);
        n->name = cur().text;
        advance();
        return n;
      }
      case Tok::LParen:
        return paren();
      case Tok::LBracket:
        return display(Shape::List, Tok::RBracket);
      case Tok::LBrace:
        return display(Shape::Set, Tok::RBrace);
      case Tok::LBag:
        return display(Shape::Bag, Tok::RBag);
      case Tok::Underscore:
        throw ParseError("'_' can only stand in a generator pattern", p0);
      default:
        throw ParseError(std::string("expected an expression, found ") + tok_name(k()), p0);
    }
  }

  // Parentheses open a unit, a quoted operator, a block, a group, or a
  // tuple/record, told apart by the first tokens inside.
  SP paren() {
    SourcePos p0 = pos();
    advance();  // (
    if (k() == Tok::RParen) {
      advance();
      return node(SExpr::K::Tuple, p0);  // unit
    }
    if (op_fun(k()) != nullptr && k1() == Tok::RParen) {
      auto n = node(SExpr::K::QuotedOp, p0);
      n->name = op_fun(k());
      advance(2);
      return n;
    }
    if (k() == Tok::Ident && k1() == Tok::Assign) {
      SP b = block(Tok::RParen);
      expect(Tok::RParen);
      return b;
    }
    auto n = node(SExpr::K::Tuple, p0);
    for (;;) {
      if (k() == Tok::Ident && k1() == Tok::Colon) {
        std::string name = cur().text;
        advance(2);
        n->fields.emplace_back(name, ternary());
      } else {
        n->fields.emplace_back("", ternary());
      }
      if (k() == Tok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::RParen);
    if (n->fields.size() == 1 && n->fields[0].first.empty()) {
      return n->fields[0].second;  // plain group
    }
    return n;
  }

  // Bracketed content: empty or plain display, range, or comprehension.
  SP display(Shape s, Tok close) {
    SourcePos p0 = pos();
    advance();  // opener
    if (k() == close) {
      advance();
      auto n = node(SExpr::K::Display, p0);
      n->shape = s;
      return n;
    }
    if (find_depth0(p_, {Tok::LeftArrow, Tok::Bar}, {}) != npos) {
      return compr(s, close, p0);
    }
    if (find_depth0(p_, {Tok::DotDot}, {}) != npos) {
      auto n = node(SExpr::K::Range, p0);
      n->shape = s;
      n->a = ternary();
      expect(Tok::DotDot);
      n->b = ternary();
      expect(close);
      return n;
    }
    auto n = node(SExpr::K::Display, p0);
    n->shape = s;
    for (;;) {
      n->elems.push_back(ternary());
      if (k() == Tok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(close);
    return n;
  }

  SP compr(Shape s, Tok close, SourcePos p0) {
    auto n = node(SExpr::K::Compr, p0);
    n->shape = s;
    if (find_depth0(p_, {Tok::Bar}, {}) != npos) {
      // Left of the bar: one generator chain, or the map expression.
      if (find_depth0(p_, {Tok::LeftArrow}, {Tok::Bar}) != npos) {
        n->clauses.push_back(generator_clause());
      } else {
        n->a = ternary();
      }
      expect(Tok::Bar);
      for (;;) {
        n->clauses.push_back(clause());
        if (k() == Tok::Semicolon) {
          advance();
          continue;
        }
        break;
      }
    } else {
      // No bar: a bare generator with an implicit map, as in "{x <- L}".
      n->clauses.push_back(generator_clause());
    }
    expect(close);
    if (!n->a && !n->clauses.front().is_generator) {
      throw ParseError("a comprehension needs a map clause or a leading generator", p0);
    }
    return n;
  }

  Clause clause() {
    if (find_depth0(p_, {Tok::LeftArrow}, {Tok::Semicolon, Tok::Bar}) != npos) {
      return generator_clause();
    }
    Clause c;
    c.pos = pos();
    c.filter = ternary();
    return c;
  }

  Clause generator_clause() {
    Clause c;
    c.is_generator = true;
    c.pos = pos();
    for (;;) {
      c.chain.push_back(pattern(c.chain.empty()));
      expect(Tok::LeftArrow, "'<-' in a generator");
      // Another pattern follows only if another depth-0 arrow does.
      if (find_depth0(p_, {Tok::LeftArrow}, {Tok::Semicolon, Tok::Bar}) == npos) break;
    }
    c.source = ternary();
    return c;
  }

  Pattern pattern(bool first) {
    Pattern p;
    p.pos = pos();
    if (k() == Tok::Ident) {
      p.vars.push_back(cur().text);
      advance();
      return p;
    }
    if (k() == Tok::Underscore) {
      p.vars.push_back("_");
      advance();
      return p;
    }
    if (k() == Tok::LBrace) {
      if (!first) {
        throw ParseError("only the first pattern of a generator chain may be a tuple", pos());
      }
      advance();
      p.multi = true;
      for (;;) {
        std::string v = expect_ident("a pattern variable");
        for (const std::string& seen : p.vars) {
          if (seen == v) throw ParseError("pattern variables must be distinct", p.pos);
        }
        p.vars.push_back(v);
        if (k() == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::RBrace);
      return p;
    }
    throw ParseError("expected a generator pattern", pos());
  }

  SP switch_block(SP scrut, SourcePos qp) {
    advance();  // {
    auto n = node(SExpr::K::Switch, qp);
    n->a = scrut;
    for (;;) {
      SwitchItem it;
      it.pos = pos();
      if (k() == Tok::Underscore && k1() == Tok::Arrow) {
        it.is_default = true;
        advance(2);
      } else if (k() == Tok::At) {
        advance();
        it.case_id = expect_ident("a case name after '@'");
        if (k() == Tok::LParen) {
          advance();
          if (k() == Tok::Underscore) {
            it.payload = "_";
            advance();
          } else {
            it.payload = expect_ident("a payload variable");
          }
          expect(Tok::RParen);
        }
        expect(Tok::Arrow, "'->' in a switch arm");
      } else {
        for (;;) {
          it.keys.push_back(key_literal());
          if (k() == Tok::Comma) {
            advance();
            continue;
          }
          break;
        }
        expect(Tok::Arrow, "'->' in a switch arm");
      }
      it.body = ternary();
      n->items.push_back(std::move(it));
      if (k() == Tok::Semicolon) {
        advance();
        if (k() == Tok::RBrace) break;
        continue;
      }
      break;
    }
    expect(Tok::RBrace);
    return n;
  }

  SP choose_block(SourcePos p0) {
    expect(Tok::LBrace, "'{' after ~choose");
    auto n = node(SExpr::K::Choose, p0);
    Rational sum(0);
    for (;;) {
      SP e = ternary();
      expect(Tok::Colon, "':' before a choose weight");
      SourcePos wp = pos();
      Rational w = weight_literal();
      if (w <= 0) throw ParseError("choose weights must be positive", wp);
      sum += w;
      n->weighted.emplace_back(w, e);
      if (k() == Tok::Semicolon) {
        advance();
        if (k() == Tok::RBrace) break;
        continue;
      }
      break;
    }
    expect(Tok::RBrace);
    if (sum != 1) throw ParseError("choose weights must sum to 1", p0);
    return n;
  }

  // Literal rational with optional sign and "/": switch keys.
  Rational key_literal() {
    bool neg = false;
    if (k() == Tok::Minus) {
      neg = true;
      advance();
    }
    Rational v = weight_literal();
    return neg ? Rational(-v) : v;
  }

  // Literal nonnegative rational: "503", "0.503", "2/3".
  Rational weight_literal() {
    if (k() != Tok::Number) {
      throw ParseError(std::string("expected a numeric literal, found ") + tok_name(k()),
                       pos());
    }
    Rational v = cur().number;
    advance();
    if (k() == Tok::Slash) {
      advance();
      if (k() != Tok::Number) {
        throw ParseError("expected a denominator", pos());
      }
      Rational den = cur().number;
      if (den == 0) throw ParseError("literal denominator is zero", pos());
      advance();
      v /= den;
    }
    return v;
  }

  SP binary(const char* op, SP l, SP r, SourcePos p0) {
    auto n = node(SExpr::K::Binary, p0);
    n->name = op;
    n->a = std::move(l);
    n->b = std::move(r);
    return n;
  }
};

}  // namespace

SP parse_surface(const std::vector<Token>& toks) { return Parser(toks).program(); }

}  // namespace alea::surface
