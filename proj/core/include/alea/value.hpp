#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "alea/number.hpp"

namespace alea {

// Record field name: positional (#1, #2, ...) or symbolic. Canonical field
// order puts positional fields first (by index), then symbolic ones (by
// name); every iteration over record fields uses this order.
class FieldId {
 public:
  static FieldId positional(std::uint32_t index);  // pre: index >= 1
  static FieldId named(std::string name);

  bool is_positional() const { return id_.index() == 0; }
  std::uint32_t index() const { return std::get<0>(id_); }
  const std::string& name() const { return std::get<1>(id_); }

  friend bool operator==(const FieldId&, const FieldId&) = default;
  friend auto operator<=>(const FieldId&, const FieldId&) = default;

 private:
  std::variant<std::uint32_t, std::string> id_;
};

std::string to_string(const FieldId& f);

using CaseId = std::string;

enum class ValKind { Num, List, Bag, Set, Record, Tag };
enum class Shape { List, Bag, Set };

std::string to_string(Shape s);

class Val;
struct ValRep;

// Orders values by meta-identity (see meta_compare below).
struct MetaLess {
  bool operator()(const Val& a, const Val& b) const;
};

using ListVal = std::vector<Val>;
using BagVal = std::map<Val, std::uint64_t, MetaLess>;  // multiplicities > 0
using SetVal = std::set<Val, MetaLess>;
using RecordVal = std::map<FieldId, Val>;

// Immutable value: exact number (or NaN), list, bag, set, record, or tag.
// Values are shared; copying is cheap.
class Val {
 public:
  Val();  // the number 0

  static Val num(Number n);
  static Val num(long n) { return num(Number(n)); }
  static Val boolean(bool b) { return num(b ? 1L : 0L); }
  static Val nan() { return num(Number::nan()); }
  static Val list(ListVal xs);
  static Val bag(BagVal b);  // pre: all multiplicities > 0
  static Val set(SetVal s);
  static Val record(RecordVal r);
  static Val unit() { return record({}); }
  static Val tag(CaseId c, Val payload);
  static Val empty_coll(Shape s);
  // Builds a collection of the given shape from element instances
  // (lists keep order; bags count; sets deduplicate).
  static Val coll_of(Shape s, std::span<const Val> elems);

  ValKind kind() const;
  bool is_coll() const;
  Shape shape() const;  // pre: is_coll()

  const Number& num() const;
  const ListVal& list() const;
  const BagVal& bag() const;
  const SetVal& set() const;
  const RecordVal& record() const;
  const CaseId& tag_case() const;
  const Val& tag_payload() const;

  // True when no NaN occurs anywhere inside; cached at construction.
  bool nan_free() const;

 private:
  explicit Val(std::shared_ptr<const ValRep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const ValRep> rep_;
  friend int meta_compare(const Val&, const Val&);
  friend struct ValMaker;
};

struct TagVal {
  CaseId case_id;
  Val payload;
};

struct ValRep {
  std::variant<Number, ListVal, BagVal, SetVal, RecordVal, TagVal> data;
  bool nan_free;
};

// Total order defining meta-identity: NaN equals NaN here. Numbers come
// first (by value, NaN last), then lists, bags, sets, records, tags;
// within one kind the order is lexicographic on canonical iteration.
int meta_compare(const Val& a, const Val& b);
bool meta_equal(const Val& a, const Val& b);

inline bool MetaLess::operator()(const Val& a, const Val& b) const {
  return meta_compare(a, b) < 0;
}

// Object-level equality: NaN is not equal to itself, so any value
// containing NaN (anywhere) is unequal to everything, itself included.
// Collections of equal shape compare by mutual containment, records
// fieldwise, tags by case and payload; mismatched kinds are unequal.
bool star_equal(const Val& a, const Val& b);

// Object-level containment on two collections of equal shape.
// Lists: a occurs as a contiguous slice of b (the empty list always does).
// Bags: every instance of a matches a distinct instance of b.
// Sets: every element of a has an object-equal element in b.
bool star_subset(const Val& a, const Val& b);

// The six derived readings on equal-shaped collections: Le is subset,
// Ge is superset, Lt/Gt are the strict versions, Eq/Ne as star_equal.
bool star_compare(Rel rel, const Val& a, const Val& b);

// Number of element instances (bag multiplicities counted).
std::uint64_t coll_size(const Val& c);

// Element instances in canonical order: lists positionally, bags by key
// order with one entry per instance, sets in element order.
std::vector<Val> coll_instances(const Val& c);

// Concatenation of two collections of equal shape: list append, bag
// union (multiplicities add), set union.
Val coll_concat(const Val& a, const Val& b);

// Forgetful conversions along list -> bag -> set; anything else is an
// internal error.
Val coll_convert(const Val& v, Shape target);

// The bag or set with one instance of x removed; an absent x is an
// internal error (callers remove only what they drew).
Val without(const Val& coll, const Val& x);

// Bag of the multiplicities of a bag: ⟨a,a,a,b,c⟩ becomes ⟨3,1,1⟩.
Val mults(const Val& bag);

}  // namespace alea
