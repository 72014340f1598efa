#pragma once

#include <map>
#include <memory>
#include <string>

#include "alea/value.hpp"

namespace alea {

// Numeric kind chain: bool <= nat <= int <= rat. Bool holds exactly
// {0, 1}; nat, int and rat all contain NaN as well.
enum class NumKind { Bool, Nat, Int, Rat };

// Collection mode: Pos excludes the empty collection, Pos <= Opt.
enum class Mode { Pos, Opt };

enum class TypeKind { Any, None, Num, Coll, Prod, Sum };

class Type;
struct TypeRep;

using FieldTypes = std::map<FieldId, Type>;
using CaseTypes = std::map<CaseId, Type>;

// Immutable structural type; shared, cheap to copy.
class Type {
 public:
  Type();  // any

  static Type any();
  static Type none();
  static Type num(NumKind k);
  static Type boolean() { return num(NumKind::Bool); }
  static Type coll(Shape s, Mode m, Type elem);
  static Type prod(FieldTypes fields);
  static Type sum(CaseTypes cases);
  static Type unit() { return prod({}); }

  TypeKind kind() const;
  NumKind num_kind() const;
  Shape shape() const;
  Mode mode() const;
  const Type& elem() const;
  const FieldTypes& fields() const;
  const CaseTypes& cases() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  explicit Type(std::shared_ptr<const TypeRep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const TypeRep> rep_;
  friend struct TypeMaker;
  friend struct TypeAccess;
};

// Subtype order of the type lattice.
bool subtype(const Type& a, const Type& b);

// Least upper bound. Mismatched constructors join to any; products join
// on their common fields, sums on the union of their cases.
Type join(const Type& a, const Type& b);

// Greatest lower bound. Mismatched constructors meet to none; products
// meet on the union of their fields, sums on the intersection of their
// cases (possibly an empty sum, which is an empty type but not none).
Type meet(const Type& a, const Type& b);

// True when the type has no inhabitants: none, sums whose cases are all
// empty (including the empty sum), products with an empty field, and
// nonempty-mode collections of an empty element type.
bool type_empty(const Type& t);

// Membership of a value in a type. Records may carry extra fields beyond
// the ones the product declares.
bool inhabits(const Val& v, const Type& t);

// The least type containing the value: 0 and 1 are bool, other
// non-negative integers and NaN nat (NaN lives in every kind above
// bool), negative integers int, proper fractions rat; collections get
// Pos mode iff non-empty and the join of their elements' least types
// (none when empty).
Type least_type_of(const Val& v);

std::string to_string(const Type& t);

}  // namespace alea
