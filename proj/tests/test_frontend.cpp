#include "alea/frontend.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "alea/engine.hpp"
#include "doctest.h"
#include "support/val_compare.hpp"
#include "support/corpus.hpp"

using namespace alea;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Val det(const std::string& src) {
  Expr e = parse_program(src);
  infer_program(e);
  return eval_det(Env{}, e);
}

}  // namespace

TEST_CASE("the surface corpus lexes, parses, desugars and type-checks") {
  for (const auto& entry : testsupport::corpus()) {
    CAPTURE(entry.name);
    CAPTURE(entry.source);
    Expr e = parse_program(entry.source);
    TypeEnv env;
    for (const auto& [x, t] : entry.env) env = env.bind(x, t);
    Typed typed = elaborate(env, e);
    CHECK_FALSE(type_empty(typed.type));
    CHECK(infer(env, typed.expr) == typed.type);
  }
}

TEST_CASE("a generator-as-map comprehension is the filtered map, verbatim") {
  Expr gen_as_map = parse_program("{ x ← S | x ≥ 0 }");
  Expr explicit_map = parse_program("{ x | x ← S; x ≥ 0 }");
  CHECK(gen_as_map == explicit_map);

  // Mapping the condition itself is a different program.
  Expr map_of_cond = parse_program("{ x ≥ 0 | x ← S }");
  CHECK(map_of_cond != gen_as_map);

  // ASCII and Unicode spellings parse to identical trees.
  CHECK(parse_program("{ x <- S | x >= 0 }") == gen_as_map);
  CHECK(parse_program("[ k*k | k <- [1 .. 9]; !(k = 3) /\\ k <= 5 ]") ==
        parse_program("[ k*k | k ← [1 .. 9]; ¬(k = 3) ∧ k ≤ 5 ]"));
  CHECK(parse_program("<{ 1, 2 }>") == parse_program("⟨ 1, 2 ⟩"));
  CHECK(parse_program("a != b") == parse_program("a ≠ b"));
}

TEST_CASE("expectation of a die plus a coin") {
  Expr e = parse_program("E(~uniform{1 .. 6} + ~bernoulli(2/3))");
  Typed t = infer_program(e);
  CHECK(t.type == Type::num(NumKind::Rat));
  CHECK(eval_dist(Env{}, t.expr) == Dist::delta(Val::num(Number(Rational(25, 6)))));
}

TEST_CASE("programs are binding chains with an optional bare result") {
  CHECK(det("x := 3; y := x + 1; y * y") == Val::num(16L));
  // A program may end on a binding; that binding is the result.
  CHECK(det("x := 3; y := x + 1;") == Val::num(4L));
  CHECK(det("x := 3; y := x + 1") == Val::num(4L));
  // Later bindings shadow earlier ones.
  CHECK(det("x := 3; x := x * x; x + 1") == Val::num(10L));
  // Builtin names can be rebound as plain variables.
  CHECK(det("max := 3; max + 1") == Val::num(4L));
}

TEST_CASE("numeric literals are exact rationals") {
  CHECK(det("0.503") == Val::num(Number(Rational(503, 1000))));
  CHECK(det("1.50") == Val::num(Number(Rational(3, 2))));
  CHECK(det("010") == Val::num(10L));  // no octal reading
  CHECK(det("2/3") == Val::num(Number(Rational(2, 3))));
  CHECK(det("0/0") == Val::nan());
  CHECK(det("1/3 + 1/6") == Val::num(Number(Rational(1, 2))));
}

TEST_CASE("operator spellings and precedence") {
  CHECK(det("1 + 2 * 3") == Val::num(7L));
  CHECK(det("(1 + 2) * 3") == Val::num(9L));
  CHECK(det("2 - 3 - 4") == Val::num(-5L));
  CHECK(det("12 // 3 // 2") == Val::num(2L));
  CHECK(det("7 \\\\ 2") == Val::num(1L));
  CHECK(det("7 \\ 2") == Val::num(1L));  // a lone backslash is tolerated
  CHECK(det("(0 - 7) \\\\ 2") == Val::num(1L));  // remainder takes the divisor's sign
  CHECK(det("(0 - 7) // 2") == Val::num(-4L));
  CHECK(det("1 <= 2") == Val::boolean(true));
  CHECK(det("1 = 1 \\/ 0/0 = 0/0") == Val::boolean(true));
  CHECK(det("0/0 = 0/0") == Val::boolean(false));
  CHECK(det("0/0 != 0/0") == Val::boolean(true));
  CHECK(det("-2 < -1") == Val::boolean(true));
  CHECK(det("abs(1 - 4) = 3") == Val::boolean(true));
  CHECK(det("1 + 2 = 3") == Val::boolean(true));  // comparison binds loosest
  CHECK(det("1 ? 2 : 3") == Val::num(2L));
  CHECK(det("0 ? 2 : 1 ? 4 : 5") == Val::num(4L));  // ternary nests to the right
}

TEST_CASE("switches parse into their kernel forms") {
  Expr multi = parse_program("n := 7; n ? { 0 → 100; 2, 3 → 200; _ → 300 }");
  infer_program(multi);
  CHECK(eval_det(Env{}, multi) == Val::num(300L));
  Expr picked = parse_program("n := 3; n ? { 0 → 100; 2, 3 → 200; _ → 300 }");
  CHECK(eval_det(Env{}, picked) == Val::num(200L));

  // NaN falls to the default arm.
  CHECK(det("n := 0/0; n ? { 0 -> 10; _ -> 77 }") == Val::num(77L));

  // A conditional joins the tag types, so both handlers apply.
  Expr cs = parse_program(
      "x := 1 = 1 ? @good(41) : @bad; x ? { @good(n) -> n + 1; @bad -> 0 }");
  infer_program(cs);
  CHECK(eval_det(Env{}, cs) == Val::num(42L));
  CHECK(det("x := 1 = 0 ? @good(41) : @bad; x ? { @good(n) -> n + 1; @bad -> 0 }") ==
        Val::num(0L));
  // A wildcard payload discards the value; a default arm covers the rest.
  CHECK(det("x := 1 = 1 ? @good(41) : @bad; x ? { @good(_) -> 7; _ -> 0 }") ==
        Val::num(7L));
}

TEST_CASE("weighted choices check their weights at parse time") {
  Expr e = parse_program("~choose { 10 : 1/4; 20 : 0.75 }");
  Dist d = eval_dist(Env{}, e);
  CHECK(d.prob(Val::num(10L)) == Rational(1, 4));
  CHECK(d.prob(Val::num(20L)) == Rational(3, 4));
  CHECK_THROWS_AS(parse_program("~choose { 1 : 1/2; 2 : 1/3 }"), ParseError);
  CHECK_THROWS_AS(parse_program("~choose { 1 : 0; 2 : 1 }"), ParseError);
}

TEST_CASE("rejected programs name their mistake") {
  CHECK_THROWS_AS(parse_program("1 < 2 < 3"), ParseError);
  CHECK_THROWS_AS(parse_program("E := 3; E"), ParseError);
  CHECK_THROWS_AS(parse_program("E"), ParseError);
  CHECK_THROWS_AS(parse_program("~uniform 3"), ParseError);
  CHECK_THROWS_AS(parse_program("~poisson(3)"), ParseError);
  CHECK_THROWS_AS(parse_program("foo(2)"), ParseError);
  CHECK_THROWS_AS(parse_program("f := 3; f(2)"), ParseError);
  CHECK_THROWS_AS(parse_program("(+)"), ParseError);
  CHECK_THROWS_AS(parse_program("_ + 1"), ParseError);
  CHECK_THROWS_AS(parse_program("x ? { @good(n) -> 1; 0 -> 2 }"), ParseError);
  CHECK_THROWS_AS(parse_program("x ? { 1 -> 1; 1 -> 2; _ -> 0 }"), ParseError);
  CHECK_THROWS_AS(parse_program("x ? { _ -> 1; _ -> 2 }"), ParseError);
  CHECK_THROWS_AS(parse_program("x ? { @a -> 1; @a -> 2 }"), ParseError);
  CHECK_THROWS_AS(parse_program("(foo: 1, foo: 2)"), ParseError);
  CHECK_THROWS_AS(parse_program("{ a + a | {a, a} <- {1..4} }"), ParseError);
  CHECK_THROWS_AS(parse_program("{ {a, b} <- {1..4} }"), ParseError);
  CHECK_THROWS_AS(parse_program("[ a | {a, b} <- {1..4} ]"), ParseError);
  CHECK_THROWS_AS(parse_program("[ x <- {a, b} <- C ]"), ParseError);
  CHECK_THROWS_AS(parse_program("1 +"), ParseError);
  CHECK_THROWS_AS(parse_program(""), ParseError);
  CHECK_THROWS_AS(parse_program("$"), ParseError);
  CHECK_THROWS_AS(parse_program("\xff"), ParseError);
  CHECK_THROWS_AS(parse_program("x := ; x"), ParseError);
}

TEST_CASE("comments and whitespace are insignificant") {
  CHECK(det("1 + -- rest of line\n 2") == Val::num(3L));
  CHECK(det("a := 1; a--b") == Val::num(1L));  // maximal munch: a, then a comment
  CHECK(det("\n\n  3\t\n") == Val::num(3L));
  // "x<-2" is a generator arrow, never "x < (-2)".
  Expr gen = parse_program("{ k | k<-{1..3} }");
  CHECK(gen == parse_program("{ k | k <- {1 .. 3} }"));
}

TEST_CASE("every shipped example program elaborates") {
  std::filesystem::path dir = ALEA_FIXTURES_DIR;
  int seen = 0;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() != ".alea") continue;
    CAPTURE(f.path().filename().string());
    Expr e = parse_program(slurp(f.path()));
    Typed t = infer_program(e);
    CHECK_FALSE(type_empty(t.type));
    ++seen;
  }
  CHECK(seen >= 5);

  // The unfair coin, exactly.
  Expr coin = parse_program(slurp(dir / "coin.alea"));
  Dist d = eval_dist(Env{}, infer_program(coin).expr);
  CHECK(d.prob(Val::tag("head", Val::unit())) == Rational(503, 1000));
  CHECK(d.prob(Val::tag("ship", Val::unit())) == Rational(497, 1000));
}
