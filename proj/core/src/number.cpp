#include "alea/number.hpp"

#include "alea/error.hpp"

namespace alea {

std::string to_string(SourcePos pos) {
  if (!pos.known()) return "?:?";
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

Error::Error(std::string kind, std::string message, SourcePos pos)
    : std::runtime_error(pos.known()
                             ? kind + " at " + to_string(pos) + ": " + message
                             : kind + ": " + message),
      kind_(std::move(kind)),
      message_(std::move(message)),
      pos_(pos) {}

Rational make_rational(long num, long den) {
  if (den == 0) throw InternalError("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Number Number::nan() {
  Number n;
  n.nan_ = true;
  return n;
}

const Rational& Number::rat() const {
  if (nan_) throw InternalError("rat() on NaN");
  return q_;
}

bool Number::is_integer() const {
  return !nan_ && q_.get_den() == 1;
}

bool Number::fits_ulong() const {
  return is_integer() && sgn(q_) >= 0 && q_.get_num().fits_ulong_p();
}

unsigned long Number::as_ulong() const {
  if (!fits_ulong()) throw InternalError("as_ulong: out of range");
  return q_.get_num().get_ui();
}

bool Number::meta_equal(const Number& a, const Number& b) {
  if (a.nan_ || b.nan_) return a.nan_ && b.nan_;
  return cmp(a.q_, b.q_) == 0;
}

Number num_arith(ArithOp op, const Number& x, const Number& y) {
  if (x.is_nan() || y.is_nan()) return Number::nan();
  const Rational& a = x.rat();
  const Rational& b = y.rat();
  switch (op) {
    case ArithOp::Add:
      return Number(Rational(a + b));
    case ArithOp::Sub:
      return Number(Rational(a - b));
    case ArithOp::Mul:
      return Number(Rational(a * b));
    case ArithOp::Div:
      if (sgn(b) == 0) return Number::nan();
      return Number(Rational(a / b));
    case ArithOp::IDiv:
    case ArithOp::Mod: {
      if (!x.is_integer() || !y.is_integer())
        throw InternalError("integer division on non-integer operands");
      if (sgn(b) == 0) return Number::nan();
      mpz_class r;
      if (op == ArithOp::IDiv) {
        mpz_fdiv_q(r.get_mpz_t(), a.get_num().get_mpz_t(),
                   b.get_num().get_mpz_t());
      } else {
        mpz_fdiv_r(r.get_mpz_t(), a.get_num().get_mpz_t(),
                   b.get_num().get_mpz_t());
      }
      return Number(Rational(r));
    }
    case ArithOp::Min:
      return cmp(a, b) <= 0 ? x : y;
    case ArithOp::Max:
      return cmp(a, b) >= 0 ? x : y;
  }
  throw InternalError("num_arith: bad op");
}

bool num_compare(Rel rel, const Number& x, const Number& y) {
  if (x.is_nan() || y.is_nan()) return rel == Rel::Ne;
  int c = cmp(x.rat(), y.rat());
  switch (rel) {
    case Rel::Eq:
      return c == 0;
    case Rel::Ne:
      return c != 0;
    case Rel::Lt:
      return c < 0;
    case Rel::Le:
      return c <= 0;
    case Rel::Gt:
      return c > 0;
    case Rel::Ge:
      return c >= 0;
  }
  throw InternalError("num_compare: bad rel");
}

int num_order(const Number& x, const Number& y) {
  if (x.is_nan() && y.is_nan()) return 0;
  if (x.is_nan()) return 1;
  if (y.is_nan()) return -1;
  return cmp(x.rat(), y.rat());
}

std::string to_string(const Number& n) {
  if (n.is_nan()) return "NaN";
  return n.rat().get_str();
}

}  // namespace alea
