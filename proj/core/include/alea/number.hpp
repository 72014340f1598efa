#pragma once

#include <gmpxx.h>

#include <string>

namespace alea {

// Exact rational, always canonical: reduced, positive denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den);

// Comparator usable as std::map key order.
struct RationalLess {
  bool operator()(const Rational& a, const Rational& b) const {
    return cmp(a, b) < 0;
  }
};

// A number is an exact rational extended with NaN. NaN absorbs all
// arithmetic and fails every comparison except "not equal".
class Number {
 public:
  Number() : q_(0) {}
  Number(long n) : q_(n) {}  // NOLINT: implicit by design for literals
  explicit Number(Rational q) : q_(std::move(q)) {}

  static Number nan();

  bool is_nan() const { return nan_; }
  // pre: !is_nan()
  const Rational& rat() const;

  bool is_integer() const;  // false for NaN
  bool fits_ulong() const;  // non-negative integer fitting unsigned long
  unsigned long as_ulong() const;

  friend bool operator==(const Number& a, const Number& b) {
    return meta_equal(a, b);
  }

  // Identity with NaN == NaN; the basis of collation and collection keys.
  static bool meta_equal(const Number& a, const Number& b);

 private:
  bool nan_ = false;
  Rational q_;
};

enum class ArithOp { Add, Sub, Mul, Div, IDiv, Mod, Min, Max };
enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

// Total arithmetic: NaN operands, division by zero, and integer division
// or modulus by zero all yield NaN. IDiv is floor division and Mod its
// matching remainder (sign of the divisor); both require integer operands.
Number num_arith(ArithOp op, const Number& x, const Number& y);

// Object-level comparison: any comparison against NaN is false, except
// Ne which is true.
bool num_compare(Rel rel, const Number& x, const Number& y);

// Total order used for canonical iteration and rendering: rationals by
// value, NaN greater than every rational. Returns <0, 0, >0.
int num_order(const Number& x, const Number& y);

std::string to_string(const Number& n);  // "5", "-2/3", "NaN"

}  // namespace alea
