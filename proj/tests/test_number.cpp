#include "alea/number.hpp"

#include <vector>

#include "alea/error.hpp"
#include "doctest.h"

using namespace alea;

TEST_CASE("rational arithmetic is exact") {
  Number a(Rational(1, 3));
  Number b(Rational(1, 6));
  CHECK(num_arith(ArithOp::Add, a, b) == Number(Rational(1, 2)));
  CHECK(num_arith(ArithOp::Sub, a, b) == Number(Rational(1, 6)));
  CHECK(num_arith(ArithOp::Mul, a, b) == Number(Rational(1, 18)));
  CHECK(num_arith(ArithOp::Div, a, b) == Number(2));

  // No silent overflow: (2^80 + 1) - 2^80 = 1.
  Rational big(mpz_class(1) << 80);
  Number c(Rational(big + 1));
  CHECK(num_arith(ArithOp::Sub, c, Number(big)) == Number(1));
}

TEST_CASE("make_rational canonicalizes") {
  CHECK(make_rational(2, 4) == Rational(1, 2));
  CHECK(make_rational(1, -2) == Rational(-1, 2));
  CHECK(make_rational(1, -2).get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), InternalError);
}

TEST_CASE("NaN absorbs arithmetic and arises from division by zero") {
  Number nan = Number::nan();
  Number one(1);
  for (ArithOp op : {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div, ArithOp::IDiv,
                     ArithOp::Mod, ArithOp::Min, ArithOp::Max}) {
    CHECK(num_arith(op, nan, one).is_nan());
    CHECK(num_arith(op, one, nan).is_nan());
    CHECK(num_arith(op, nan, nan).is_nan());
  }
  CHECK(num_arith(ArithOp::Div, one, Number(0)).is_nan());
  CHECK(num_arith(ArithOp::IDiv, one, Number(0)).is_nan());
  CHECK(num_arith(ArithOp::Mod, one, Number(0)).is_nan());
  CHECK_FALSE(num_arith(ArithOp::Div, Number(0), one).is_nan());
}

TEST_CASE("floor division and matching remainder") {
  CHECK(num_arith(ArithOp::IDiv, Number(7), Number(2)) == Number(3));
  CHECK(num_arith(ArithOp::IDiv, Number(-7), Number(2)) == Number(-4));
  CHECK(num_arith(ArithOp::Mod, Number(7), Number(2)) == Number(1));
  CHECK(num_arith(ArithOp::Mod, Number(-7), Number(2)) == Number(1));
  CHECK(num_arith(ArithOp::Mod, Number(7), Number(-2)) == Number(-1));
  CHECK(num_arith(ArithOp::Mod, Number(-7), Number(-2)) == Number(-1));

  // a = (a // b) * b + (a \\ b), remainder signed like the divisor.
  for (long a = -12; a <= 12; ++a) {
    for (long b = -12; b <= 12; ++b) {
      if (b == 0) continue;
      Number q = num_arith(ArithOp::IDiv, Number(a), Number(b));
      Number r = num_arith(ArithOp::Mod, Number(a), Number(b));
      CHECK(q.rat() * b + r.rat() == Rational(a));
      int sr = sgn(r.rat());
      CHECK((sr == 0 || sr == sgn(Rational(b))));
      CHECK(cmp(abs(r.rat()), abs(Rational(b))) < 0);
    }
  }
  CHECK_THROWS_AS(num_arith(ArithOp::IDiv, Number(Rational(1, 2)), Number(1)), InternalError);
  CHECK_THROWS_AS(num_arith(ArithOp::Mod, Number(1), Number(Rational(1, 2))), InternalError);
}

TEST_CASE("comparisons against NaN fail except inequality") {
  Number nan = Number::nan();
  Number x(3);
  for (Rel rel : {Rel::Eq, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge}) {
    CHECK_FALSE(num_compare(rel, nan, x));
    CHECK_FALSE(num_compare(rel, x, nan));
    CHECK_FALSE(num_compare(rel, nan, nan));
  }
  CHECK(num_compare(Rel::Ne, nan, x));
  CHECK(num_compare(Rel::Ne, nan, nan));
  CHECK(num_compare(Rel::Le, x, x));
  CHECK(num_compare(Rel::Lt, Number(Rational(1, 3)), Number(Rational(1, 2))));
}

TEST_CASE("meta equality treats NaN as itself") {
  CHECK(Number::meta_equal(Number::nan(), Number::nan()));
  CHECK_FALSE(Number::meta_equal(Number::nan(), Number(0)));
  CHECK(Number::meta_equal(Number(Rational(2, 4)), Number(Rational(1, 2))));
}

TEST_CASE("canonical order is total with NaN last") {
  std::vector<Number> xs = {Number(-3), Number(Rational(1, 2)), Number(2), Number::nan()};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(num_order(xs[i], xs[i]) == 0);
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      CHECK(num_order(xs[i], xs[j]) < 0);
      CHECK(num_order(xs[j], xs[i]) > 0);
    }
  }
}

TEST_CASE("integer predicates and conversion") {
  CHECK(Number(5).is_integer());
  CHECK_FALSE(Number(Rational(5, 2)).is_integer());
  CHECK_FALSE(Number::nan().is_integer());
  CHECK(Number(5).fits_ulong());
  CHECK_FALSE(Number(-5).fits_ulong());
  CHECK(Number(5).as_ulong() == 5);
  CHECK_THROWS_AS(Number(-5).as_ulong(), InternalError);
}

TEST_CASE("number rendering") {
  CHECK(to_string(Number(5)) == "5");
  CHECK(to_string(Number(Rational(-2, 3))) == "-2/3");
  CHECK(to_string(Number::nan()) == "NaN");
}
