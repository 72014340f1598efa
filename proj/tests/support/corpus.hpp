#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alea/ast.hpp"
#include "alea/type.hpp"

namespace alea::testsupport {

// One surface fragment that must lex, parse, desugar, and type-check.
// Open fragments carry the typing of their free variables.
struct CorpusEntry {
  std::string name;
  std::string source;
  std::vector<std::pair<VarId, Type>> env;
};

inline std::vector<CorpusEntry> corpus() {
  using F = FieldId;
  Type b = Type::num(NumKind::Bool);
  Type n = Type::num(NumKind::Nat);
  Type q = Type::num(NumKind::Rat);
  Type qset = Type::coll(Shape::Set, Mode::Opt, q);
  Type qlist = Type::coll(Shape::List, Mode::Opt, q);
  Type qbag = Type::coll(Shape::Bag, Mode::Opt, q);
  Type qllist = Type::coll(Shape::List, Mode::Opt, qlist);

  std::vector<CorpusEntry> c;
  c.push_back({"arith_cmp", "3 * (x + 1) < -2/3", {{"x", q}}});
  c.push_back({"nan_literal", "0/0", {}});
  c.push_back({"int_div_mod", "(7 // 2) + (7 \\\\ 2)", {}});
  c.push_back({"bool_connectives", "(x ≥ 0 ∧ x ≤ 9) ∨ ¬(x = 5)", {{"x", q}}});
  c.push_back({"list_display", "[1, 2, 3, 4, 5]", {}});
  c.push_back({"bag_display", "⟨2, 2, 4, 3, 2⟩", {}});
  c.push_back({"bag_display_ascii", "<{2, 2, 4, 3, 2}>", {}});
  c.push_back({"set_range", "{1 .. 5}", {}});
  c.push_back({"squares_comprehension", "{ k*k | k ← {1 .. n}; even(k) }", {{"n", n}}});
  c.push_back({"generator_as_map", "{ x ← S | x ≥ 0 }", {{"S", qset}}});
  c.push_back({"explicit_map", "{ x | x ← S; x ≥ 0 }", {{"S", qset}}});
  c.push_back({"map_of_condition", "{ x ≥ 0 | x ← S }", {{"S", qset}}});
  c.push_back({"convert_by_comprehension", "{ x ← L }", {{"L", qlist}}});
  c.push_back({"convert_by_wildcard", "{ _ ← L }", {{"L", qlist}}});
  c.push_back({"flatten", "[x ← y ← C]", {{"C", qllist}}});
  c.push_back({"flatten_wildcards", "[_ ← _ ← C]", {{"C", qllist}}});
  c.push_back({"without_replacement", "{ b - a | {a, b} ← {1 .. n}; a < b }", {{"n", n}}});
  c.push_back({"fold_display", "max{x, y, z}", {{"x", q}, {"y", q}, {"z", q}}});
  c.push_back({"quoted_fold_count", "(+)⟨ k ≥ 0 | k ← B ⟩", {{"B", qbag}}});
  c.push_back({"named_functions", "max(a, b) + min{x, y, z}",
               {{"a", q}, {"b", q}, {"x", q}, {"y", q}, {"z", q}}});
  c.push_back({"expectation", "E(~uniform{1 .. 6} + ~bernoulli(2/3))", {}});
  c.push_back({"record_named", "(foo: 42, bar: {})", {}});
  c.push_back({"tuple", "(1, 2, 3)", {}});
  c.push_back({"select_named", "r.foo", {{"r", Type::prod({{F::named("foo"), q}})}}});
  c.push_back({"select_positional", "s.#3",
               {{"s", Type::prod({{F::positional(1), q}, {F::positional(2), q}, {F::positional(3), q}})}}});
  c.push_back({"tag_payload", "@good(42)", {}});
  c.push_back({"tag_constant", "@bad", {}});
  c.push_back({"case_switch", "x ? { @good(n) → n; @bad → -1 }",
               {{"x", Type::sum({{"good", n}, {"bad", Type::unit()}})}}});
  c.push_back({"numeric_switch", "n ? { 0 → @none; 1 → @one; 2, 3 → @few; _ → @many }",
               {{"n", n}}});
  c.push_back({"bool_switch", "b ? { 1 → x; 0 → y }", {{"b", b}, {"x", q}, {"y", q}}});
  c.push_back({"ternary", "b ? x : y", {{"b", b}, {"x", q}, {"y", q}}});
  return c;
}

}  // namespace alea::testsupport
