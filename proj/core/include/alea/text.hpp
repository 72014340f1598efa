#pragma once

#include <string>

#include "alea/dist.hpp"
#include "alea/number.hpp"
#include "alea/value.hpp"

namespace alea {

// Number as a literal: "5", "-2/3". NaN is written "0/0", which parses
// back to it.
std::string render_number(const Number& n);

// Value as a parseable ASCII literal: "[1, 2]", "<{1, 1}>", "{3}",
// "(5, foo: 1)", "@win(3)". Positional record fields render bare, in
// order.
std::string render_val(const Val& v);

// Value for people: angle-bracket bags and NaN spelled out.
std::string render_val_pretty(const Val& v);

// Exact decimal like "0.503" when the denominator divides a power of
// ten; otherwise a 15-significant-digit approximation marked with "≈".
std::string render_decimal(const Rational& q);

// Aligned two-column table: pretty value, exact probability, decimal.
std::string render_dist_table(const Dist& d);

// Machine lines: value<TAB>numerator<TAB>denominator, in support order.
std::string render_dist_records(const Dist& d);

}  // namespace alea
