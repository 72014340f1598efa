#pragma once

// Surface syntax tree: the shape of the source text before desugaring.
// Internal to the frontend; everything downstream works on alea::Expr.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alea/ast.hpp"
#include "alea/frontend.hpp"
#include "alea/number.hpp"
#include "alea/value.hpp"

namespace alea::surface {

struct SExpr;
using SP = std::shared_ptr<const SExpr>;

// Generator pattern: a single variable, a wildcard "_", or a
// brace-enclosed tuple of distinct variables (draw without replacement).
struct Pattern {
  bool multi = false;
  std::vector<std::string> vars;  // "_" allowed only when !multi
  SourcePos pos;
};

// One comprehension clause. A generator holds a right-associative chain
// "p1 <- p2 <- ... <- source"; only the first pattern may be multi.
struct Clause {
  bool is_generator = false;
  std::vector<Pattern> chain;  // generators: outermost pattern first
  SP source;                   // generators
  SP filter;                   // filters
  SourcePos pos;
};

// One arm of a "? { ... }" switch: numeric keys, a case pattern, or the
// default "_".
struct SwitchItem {
  std::vector<Rational> keys;            // numeric arm
  std::optional<CaseId> case_id;         // case arm
  std::optional<std::string> payload;    // case arm: payload variable, "_" ok
  bool is_default = false;
  SP body;
  SourcePos pos;
};

struct SExpr {
  enum class K {
    Num,      // num
    Var,      // name
    Call,     // name, a          (function or quoted-operator application)
    QuotedOp, // name             (unapplied "(+)"; an error unless called)
    Draw,     // name, a          (~dist arg)
    Choose,   // weighted         (~choose{ e: p; ... })
    Unary,    // name ("-","not"), a
    Binary,   // name (operator FunId), a, b
    Ternary,  // a ? b : c
    Switch,   // a ? { items }
    Display,  // shape, elems
    Range,    // shape, a .. b
    Compr,    // shape, map (may be null), clauses
    Tuple,    // fields           (record / tuple / unit)
    Select,   // a, name or index
    Tag,      // name, a (may be null: unit payload)
    Block,    // bindings, a      (result; null when program ends in a binding)
  };

  K k;
  SourcePos pos;
  Rational num;
  std::string name;
  std::uint32_t index = 0;        // Select: positional field
  bool positional_sel = false;    // Select: #n form
  SP a, b, c;
  Shape shape = Shape::List;
  std::vector<SP> elems;
  std::vector<std::pair<Rational, SP>> weighted;           // Choose
  std::vector<Clause> clauses;                             // Compr
  std::vector<SwitchItem> items;                           // Switch
  std::vector<std::pair<std::string, SP>> fields;          // Tuple ("" = positional), Block bindings
};

SP parse_surface(const std::vector<Token>& toks);

Expr desugar(const SP& program);

}  // namespace alea::surface
