#include "alea/builtins.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "alea/error.hpp"
#include "alea/number.hpp"

namespace alea {
namespace {

const Type& kBool() {
  static const Type t = Type::num(NumKind::Bool);
  return t;
}
const Type& kNat() {
  static const Type t = Type::num(NumKind::Nat);
  return t;
}
const Type& kInt() {
  static const Type t = Type::num(NumKind::Int);
  return t;
}
const Type& kRat() {
  static const Type t = Type::num(NumKind::Rat);
  return t;
}

Type pair_of(const Type& a, const Type& b) {
  FieldTypes fs;
  fs.emplace(FieldId::positional(1), a);
  fs.emplace(FieldId::positional(2), b);
  return Type::prod(std::move(fs));
}

// A concrete signature: accepts every argument type below `arg`.
struct Sig {
  Type arg;
  Type result;
};

using FlagsFn = std::function<std::optional<AlgebraicFlags>(const Type&)>;

struct Entry {
  bool surface = true;
  std::string args_doc;
  std::string doc;
  std::vector<Sig> sigs;
  // Signature families that depend on the argument's structure (star
  // comparisons, concatenation, ranges, ...). Returning nullopt means "not
  // this family".
  std::vector<std::function<std::optional<Type>(const Type&, SourcePos)>> parametric;
  // Present iff the function can fold over a collection argument; yields
  // the flags for a given element domain, nullopt when that domain is not
  // foldable by this function.
  FlagsFn flags;
  // Function used for the fold's pairwise typing; empty means the entry's
  // own name.
  FunId fold_pair_fun;
  std::function<Val(const Val&)> apply;
};

const Number& arg_num(const Val& v) {
  if (v.kind() != ValKind::Num) throw InternalError("number expected");
  return v.num();
}

std::pair<Val, Val> arg_pair(const Val& v) {
  if (v.kind() != ValKind::Record) throw InternalError("pair expected");
  const RecordVal& r = v.record();
  auto a = r.find(FieldId::positional(1));
  auto b = r.find(FieldId::positional(2));
  if (a == r.end() || b == r.end()) throw InternalError("pair expected");
  return {a->second, b->second};
}

Val arith_val(ArithOp op, const Val& a, const Val& b) {
  return Val::num(num_arith(op, arg_num(a), arg_num(b)));
}

Val fold_values(const Val& coll, const std::function<Val(const Val&, const Val&)>& combine,
                const std::optional<Val>& neutral) {
  // Bags fold each key by repeated squaring; fold legality guarantees
  // associativity (and commutativity when the order is not positional),
  // so regrouping is sound.
  std::optional<Val> acc;
  auto feed = [&](const Val& x) { acc = acc ? combine(*acc, x) : x; };
  if (coll.kind() == ValKind::Bag) {
    for (const auto& [key, mult] : coll.bag()) {
      std::optional<Val> part;
      Val sq = key;
      for (std::uint64_t k = mult;;) {
        if (k & 1) part = part ? combine(*part, sq) : sq;
        k >>= 1;
        if (k == 0) break;
        sq = combine(sq, sq);
      }
      feed(*part);
    }
  } else {
    for (const Val& x : coll_instances(coll)) feed(x);
  }
  if (acc) return *acc;
  if (neutral) return *neutral;
  throw InternalError("fold over empty collection without neutral element");
}

// ----- + and its element classes ------------------------------------------

std::optional<AlgebraicFlags> plus_flags(const Type& elem) {
  if (subtype(elem, kRat())) {
    return AlgebraicFlags{true, true, false, Val::num(Number(0))};
  }
  if (elem.kind() == TypeKind::Coll) {
    switch (elem.shape()) {
      case Shape::List:
        return AlgebraicFlags{true, false, false, Val::empty_coll(Shape::List)};
      case Shape::Bag:
        return AlgebraicFlags{true, true, false, Val::empty_coll(Shape::Bag)};
      case Shape::Set:
        return AlgebraicFlags{true, true, true, Val::empty_coll(Shape::Set)};
    }
  }
  return std::nullopt;
}

enum class PlusClass { Num, List, Bag, Set };

Val plus_neutral_of(PlusClass c) {
  switch (c) {
    case PlusClass::Num:
      return Val::num(Number(0));
    case PlusClass::List:
      return Val::empty_coll(Shape::List);
    case PlusClass::Bag:
      return Val::empty_coll(Shape::Bag);
    case PlusClass::Set:
      return Val::empty_coll(Shape::Set);
  }
  throw InternalError("bad fold class");
}

std::optional<PlusClass> plus_class_of(const Type& elem) {
  if (type_empty(elem) || subtype(elem, kRat())) return PlusClass::Num;
  if (elem.kind() == TypeKind::Coll) {
    switch (elem.shape()) {
      case Shape::List:
        return PlusClass::List;
      case Shape::Bag:
        return PlusClass::Bag;
      case Shape::Set:
        return PlusClass::Set;
    }
  }
  return std::nullopt;
}

Val plus_combine(const Val& a, const Val& b) {
  if (a.kind() == ValKind::Num) return arith_val(ArithOp::Add, a, b);
  return coll_concat(a, b);
}

// ----- families shared by several entries ----------------------------------

std::optional<Type> concat_family(const Type& arg) {
  if (arg.kind() != TypeKind::Prod) return std::nullopt;
  const FieldTypes& fs = arg.fields();
  auto a = fs.find(FieldId::positional(1));
  auto b = fs.find(FieldId::positional(2));
  if (a == fs.end() || b == fs.end()) return std::nullopt;
  const Type& t1 = a->second;
  const Type& t2 = b->second;
  if (t1.kind() != TypeKind::Coll || t2.kind() != TypeKind::Coll) return std::nullopt;
  if (t1.shape() != t2.shape()) return std::nullopt;
  Mode m = (t1.mode() == Mode::Pos || t2.mode() == Mode::Pos) ? Mode::Pos : Mode::Opt;
  return Type::coll(t1.shape(), m, join(t1.elem(), t2.elem()));
}

std::optional<Type> star_family(const Type& arg) {
  if (arg.kind() != TypeKind::Prod) return std::nullopt;
  const FieldTypes& fs = arg.fields();
  auto a = fs.find(FieldId::positional(1));
  auto b = fs.find(FieldId::positional(2));
  if (a == fs.end() || b == fs.end()) return std::nullopt;
  if (a->second.kind() != TypeKind::Coll || b->second.kind() != TypeKind::Coll) {
    return std::nullopt;
  }
  if (a->second.shape() != b->second.shape()) return std::nullopt;
  return kBool();
}

// ----- entry builders -------------------------------------------------------

Entry comparison_entry(Rel rel, const std::string& doc) {
  Entry e;
  e.args_doc = "(rat, rat); same-shape collection pairs";
  e.doc = doc;
  e.sigs.push_back({pair_of(kRat(), kRat()), kBool()});
  e.parametric.push_back([](const Type& arg, SourcePos) { return star_family(arg); });
  e.apply = [rel](const Val& v) {
    auto [a, b] = arg_pair(v);
    if (a.kind() == ValKind::Num && b.kind() == ValKind::Num) {
      return Val::boolean(num_compare(rel, a.num(), b.num()));
    }
    return Val::boolean(star_compare(rel, a, b));
  };
  return e;
}

Entry minmax_entry(ArithOp op, const std::string& doc) {
  // On booleans these are conjunction and disjunction, which supplies the
  // neutral element; wider numeric domains have no extremal value.
  Entry e;
  e.args_doc = "(bool, bool) through (rat, rat); foldable";
  e.doc = doc;
  e.sigs.push_back({pair_of(kBool(), kBool()), kBool()});
  e.sigs.push_back({pair_of(kNat(), kNat()), kNat()});
  e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
  e.sigs.push_back({pair_of(kRat(), kRat()), kRat()});
  bool is_min = op == ArithOp::Min;
  e.flags = [is_min](const Type& elem) -> std::optional<AlgebraicFlags> {
    if (!subtype(elem, kRat())) return std::nullopt;
    AlgebraicFlags f{true, true, true, std::nullopt};
    if (subtype(elem, kBool())) f.neutral = Val::boolean(is_min);
    return f;
  };
  e.apply = [op, is_min](const Val& v) -> Val {
    if (v.is_coll()) {
      return fold_values(
          v, [op](const Val& a, const Val& b) { return arith_val(op, a, b); },
          Val::boolean(is_min));
    }
    auto [a, b] = arg_pair(v);
    return arith_val(op, a, b);
  };
  return e;
}

Entry plus_class_entry(PlusClass c) {
  Entry e;
  e.surface = false;
  e.args_doc = "one collection (inserted by the type checker)";
  e.doc = "fold of + committed to one element class";
  e.fold_pair_fun = "+";
  e.flags = [c](const Type& elem) -> std::optional<AlgebraicFlags> {
    if (type_empty(elem)) return AlgebraicFlags{true, true, true, plus_neutral_of(c)};
    auto cls = plus_class_of(elem);
    if (!cls || *cls != c) return std::nullopt;
    return plus_flags(elem);
  };
  e.apply = [c](const Val& v) { return fold_values(v, plus_combine, plus_neutral_of(c)); };
  return e;
}

Entry display_entry(Shape s) {
  Entry e;
  e.surface = false;
  e.args_doc = "(v1, ..., vn)";
  e.doc = "collection holding the values of a tuple";
  e.parametric.push_back([s](const Type& arg, SourcePos) -> std::optional<Type> {
    if (arg.kind() != TypeKind::Prod) return std::nullopt;
    const FieldTypes& fs = arg.fields();
    Type elem = Type::none();
    std::uint32_t expect = 1;
    for (const auto& [id, t] : fs) {
      if (!id.is_positional() || id.index() != expect) return std::nullopt;
      ++expect;
      elem = join(elem, t);
    }
    return Type::coll(s, fs.empty() ? Mode::Opt : Mode::Pos, elem);
  });
  e.apply = [s](const Val& v) {
    std::vector<Val> out;
    for (const auto& [id, x] : v.record()) {
      (void)id;
      out.push_back(x);
    }
    return Val::coll_of(s, out);
  };
  return e;
}

// Bounds are integers by typing; a NaN bound or an empty interval yields
// the empty collection. Sizes are capped so an accidental huge range
// fails cleanly instead of exhausting memory.
constexpr long kMaxRange = 1 << 24;

Entry range_entry(Shape s) {
  Entry e;
  e.surface = false;
  e.args_doc = "(int, int)";
  e.doc = "the integers between the bounds, inclusive";
  e.parametric.push_back([s](const Type& arg, SourcePos) -> std::optional<Type> {
    if (arg.kind() != TypeKind::Prod) return std::nullopt;
    const FieldTypes& fs = arg.fields();
    auto a = fs.find(FieldId::positional(1));
    auto b = fs.find(FieldId::positional(2));
    if (a == fs.end() || b == fs.end()) return std::nullopt;
    if (!subtype(a->second, kInt()) || !subtype(b->second, kInt())) return std::nullopt;
    return Type::coll(s, Mode::Opt, join(a->second, b->second));
  });
  e.apply = [s](const Val& v) -> Val {
    auto [lo, hi] = arg_pair(v);
    const Number& a = arg_num(lo);
    const Number& b = arg_num(hi);
    if (a.is_nan() || b.is_nan()) return Val::empty_coll(s);
    if (!a.is_integer() || !b.is_integer()) throw InternalError("range bound not an integer");
    if (a.rat() > b.rat()) return Val::empty_coll(s);
    if (b.rat() - a.rat() >= kMaxRange) throw EvalError("range too large");
    std::vector<Val> out;
    for (Rational q = a.rat(); q <= b.rat(); q += 1) out.push_back(Val::num(Number(q)));
    return Val::coll_of(s, out);
  };
  return e;
}

// Natural conversion to a fixed target shape: list -> bag -> set, plus
// the identity. Comprehension desugaring wraps every generator source in
// one of these, so an impossible direction (like a set feeding a list
// comprehension) fails here with a targeted message.
Entry convert_entry(Shape target, const char* doc) {
  Entry e;
  e.surface = false;
  e.args_doc = "collections naturally convertible to the target shape";
  e.doc = doc;
  e.parametric.push_back([target](const Type& arg, SourcePos pos) -> std::optional<Type> {
    if (arg.kind() != TypeKind::Coll) return std::nullopt;
    if (static_cast<int>(arg.shape()) > static_cast<int>(target)) {
      throw TypeError("no natural conversion from " + to_string(arg.shape()) + " to " +
                          to_string(target),
                      pos);
    }
    return Type::coll(target, arg.mode(), arg.elem());
  });
  e.apply = [target](const Val& v) {
    return v.shape() == target ? v : coll_convert(v, target);
  };
  return e;
}

// Pool of element instances for drawing without replacement, always a
// bag. The target shape of the surrounding comprehension decides which
// source shapes are legal: a bag comprehension draws from bags only, a
// set comprehension from bags or sets (a set counts as a bag of
// multiplicity one). Lists are never drawn from directly.
Entry draw_pool_entry(bool accept_set) {
  Entry e;
  e.surface = false;
  e.args_doc = accept_set ? "bag or set" : "bag";
  e.doc = "instances available to a without-replacement draw";
  e.parametric.push_back([accept_set](const Type& arg, SourcePos pos) -> std::optional<Type> {
    if (arg.kind() != TypeKind::Coll) return std::nullopt;
    if (arg.shape() == Shape::Bag || (accept_set && arg.shape() == Shape::Set)) {
      return Type::coll(Shape::Bag, arg.mode(), arg.elem());
    }
    throw TypeError("cannot draw without replacement from a " + to_string(arg.shape()) +
                        (accept_set ? " here" : " into a bag comprehension"),
                    pos);
  });
  e.apply = [](const Val& v) -> Val {
    if (v.kind() == ValKind::Bag) return v;
    BagVal b;
    for (const Val& x : v.set()) b.emplace(x, 1);
    return Val::bag(std::move(b));
  };
  return e;
}

// ----- the registry ---------------------------------------------------------

using Registry = std::map<FunId, Entry>;

Registry build_registry() {
  Registry reg;

  {
    Entry e;
    e.args_doc = "number pairs; same-shape collection pairs; foldable";
    e.doc = "addition; concatenation on collections";
    e.sigs.push_back({pair_of(kNat(), kNat()), kNat()});
    e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
    e.sigs.push_back({pair_of(kRat(), kRat()), kRat()});
    e.parametric.push_back([](const Type& arg, SourcePos) { return concat_family(arg); });
    e.flags = plus_flags;
    e.apply = [](const Val& v) -> Val {
      if (v.is_coll()) {
        // An empty fold of raw + is ambiguous between the element classes;
        // the type checker rewrites such folds to a committed name first.
        if (coll_size(v) == 0) {
          throw InternalError("fold of + not committed to an element class");
        }
        return fold_values(v, plus_combine, std::nullopt);
      }
      auto [a, b] = arg_pair(v);
      if (a.kind() == ValKind::Num) return arith_val(ArithOp::Add, a, b);
      return coll_concat(a, b);
    };
    reg.emplace("+", std::move(e));
  }
  reg.emplace("+#num", plus_class_entry(PlusClass::Num));
  reg.emplace("+#list", plus_class_entry(PlusClass::List));
  reg.emplace("+#bag", plus_class_entry(PlusClass::Bag));
  reg.emplace("+#set", plus_class_entry(PlusClass::Set));
  {
    Entry e;
    e.args_doc = "(nat, nat) through (rat, rat)";
    e.doc = "subtraction";
    e.sigs.push_back({pair_of(kNat(), kNat()), kInt()});
    e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
    e.sigs.push_back({pair_of(kRat(), kRat()), kRat()});
    e.apply = [](const Val& v) {
      auto [a, b] = arg_pair(v);
      return arith_val(ArithOp::Sub, a, b);
    };
    reg.emplace("-", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "number pairs; foldable";
    e.doc = "multiplication";
    e.sigs.push_back({pair_of(kNat(), kNat()), kNat()});
    e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
    e.sigs.push_back({pair_of(kRat(), kRat()), kRat()});
    e.flags = [](const Type& elem) -> std::optional<AlgebraicFlags> {
      if (!subtype(elem, kRat())) return std::nullopt;
      return AlgebraicFlags{true, true, false, Val::num(Number(1))};
    };
    e.apply = [](const Val& v) -> Val {
      if (v.is_coll()) {
        return fold_values(
            v, [](const Val& a, const Val& b) { return arith_val(ArithOp::Mul, a, b); },
            Val::num(Number(1)));
      }
      auto [a, b] = arg_pair(v);
      return arith_val(ArithOp::Mul, a, b);
    };
    reg.emplace("*", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "(rat, rat)";
    e.doc = "exact division; x/0 is NaN";
    e.sigs.push_back({pair_of(kRat(), kRat()), kRat()});
    e.apply = [](const Val& v) {
      auto [a, b] = arg_pair(v);
      return arith_val(ArithOp::Div, a, b);
    };
    reg.emplace("/", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "(nat, nat), (int, int)";
    e.doc = "floor division; x//0 is NaN";
    e.sigs.push_back({pair_of(kNat(), kNat()), kNat()});
    e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
    e.apply = [](const Val& v) {
      auto [a, b] = arg_pair(v);
      return arith_val(ArithOp::IDiv, a, b);
    };
    reg.emplace("//", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "(nat, nat), (int, int)";
    e.doc = "remainder of floor division, sign of the divisor; x\\\\0 is NaN";
    e.sigs.push_back({pair_of(kNat(), kNat()), kNat()});
    e.sigs.push_back({pair_of(kInt(), kInt()), kInt()});
    e.apply = [](const Val& v) {
      auto [a, b] = arg_pair(v);
      return arith_val(ArithOp::Mod, a, b);
    };
    reg.emplace("\\\\", std::move(e));
  }

  reg.emplace("min", minmax_entry(ArithOp::Min, "minimum; conjunction on booleans"));
  reg.emplace("max", minmax_entry(ArithOp::Max, "maximum; disjunction on booleans"));

  {
    Entry e;
    e.args_doc = "bool";
    e.doc = "negation";
    e.sigs.push_back({kBool(), kBool()});
    e.apply = [](const Val& v) { return Val::boolean(arg_num(v) == Number(0)); };
    reg.emplace("not", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "int";
    e.doc = "1 when the argument is an even integer, 0 otherwise (0 on NaN)";
    e.sigs.push_back({kInt(), kBool()});
    e.apply = [](const Val& v) {
      Number r = num_arith(ArithOp::Mod, arg_num(v), Number(2));
      return Val::boolean(num_compare(Rel::Eq, r, Number(0)));
    };
    reg.emplace("even", std::move(e));
  }
  {
    Entry e;
    e.args_doc = "nat, int, rat";
    e.doc = "absolute value";
    e.sigs.push_back({kNat(), kNat()});
    e.sigs.push_back({kInt(), kNat()});
    e.sigs.push_back({kRat(), kRat()});
    e.apply = [](const Val& v) -> Val {
      const Number& n = arg_num(v);
      if (n.is_nan()) return v;
      Rational q = n.rat();
      return Val::num(Number(q < 0 ? Rational(-q) : q));
    };
    reg.emplace("abs", std::move(e));
  }

  reg.emplace("=", comparison_entry(Rel::Eq, "object equality; false on NaN operands"));
  reg.emplace("!=", comparison_entry(Rel::Ne, "object inequality; true on NaN operands"));
  reg.emplace("<", comparison_entry(Rel::Lt, "strictly below; strict subobject on collections"));
  reg.emplace("<=", comparison_entry(Rel::Le, "at most; subobject on collections"));
  reg.emplace(">", comparison_entry(Rel::Gt, "strictly above; strict superobject on collections"));
  reg.emplace(">=", comparison_entry(Rel::Ge, "at least; superobject on collections"));

  {
    Entry e;
    e.args_doc = "bag";
    e.doc = "bag of the multiplicities of the argument's distinct elements";
    e.parametric.push_back([](const Type& arg, SourcePos) -> std::optional<Type> {
      if (arg.kind() != TypeKind::Coll || arg.shape() != Shape::Bag) return std::nullopt;
      return Type::coll(Shape::Bag, arg.mode(), kNat());
    });
    e.apply = [](const Val& v) { return mults(v); };
    reg.emplace("mults", std::move(e));
  }
  for (const char* name : {"count", "size"}) {
    Entry e;
    e.args_doc = "any collection";
    e.doc = "number of elements, multiplicities included";
    e.parametric.push_back([](const Type& arg, SourcePos) -> std::optional<Type> {
      if (arg.kind() != TypeKind::Coll) return std::nullopt;
      return kNat();
    });
    e.apply = [](const Val& v) { return Val::num(Number(static_cast<long>(coll_size(v)))); };
    reg.emplace(name, std::move(e));
  }

  reg.emplace("list_of", display_entry(Shape::List));
  reg.emplace("bag_of", display_entry(Shape::Bag));
  reg.emplace("set_of", display_entry(Shape::Set));
  reg.emplace("range_list", range_entry(Shape::List));
  reg.emplace("range_bag", range_entry(Shape::Bag));
  reg.emplace("range_set", range_entry(Shape::Set));
  reg.emplace("to_list", convert_entry(Shape::List, "the elements as a list"));
  reg.emplace("to_bag", convert_entry(Shape::Bag, "the elements as a bag"));
  reg.emplace("to_set", convert_entry(Shape::Set, "the distinct elements as a set"));
  reg.emplace("draw_pool_bag", draw_pool_entry(false));
  reg.emplace("draw_pool_set", draw_pool_entry(true));

  {
    Entry e;
    e.surface = false;
    e.args_doc = "(bag or set, element)";
    e.doc = "the collection with one instance of the element removed";
    e.parametric.push_back([](const Type& arg, SourcePos) -> std::optional<Type> {
      if (arg.kind() != TypeKind::Prod) return std::nullopt;
      const FieldTypes& fs = arg.fields();
      auto a = fs.find(FieldId::positional(1));
      auto b = fs.find(FieldId::positional(2));
      if (a == fs.end() || b == fs.end()) return std::nullopt;
      const Type& c = a->second;
      if (c.kind() != TypeKind::Coll || c.shape() == Shape::List) return std::nullopt;
      return Type::coll(c.shape(), Mode::Opt, c.elem());
    });
    e.apply = [](const Val& v) {
      auto [c, x] = arg_pair(v);
      return without(c, x);
    };
    reg.emplace("without", std::move(e));
  }

  return reg;
}

const Registry& registry() {
  static const Registry reg = build_registry();
  return reg;
}

const Entry& entry_of(const FunId& f, SourcePos pos = {}) {
  const Registry& reg = registry();
  auto it = reg.find(f);
  if (it == reg.end()) throw TypeError("unknown function " + f, pos);
  return it->second;
}

// Least fixpoint of the fold's result domain: combining two values of the
// accumulated type must stay inside it.
Type fold_result_type(const FunId& pair_fun, const Type& coll, const AlgebraicFlags& flags,
                      SourcePos pos) {
  Type u = coll.elem();
  if (type_empty(u)) {
    u = Type::none();
  } else {
    for (int i = 0; i < 16; ++i) {
      Type r = resolve_fun(pair_fun, pair_of(u, u), pos);
      Type u2 = join(u, r);
      if (u2 == u) break;
      u = u2;
    }
  }
  if (coll.mode() == Mode::Opt && flags.neutral) u = join(u, least_type_of(*flags.neutral));
  return u;
}

// Typing of f applied to one collection: the fold reading. Throws a
// targeted TypeError when the element domain or the collection shape rules
// the fold out.
Type fold_family(const FunId& f, const Entry& e, const Type& arg, SourcePos pos) {
  auto flags = e.flags(arg.elem());
  if (!flags) {
    throw TypeError("cannot fold " + f + " over elements of type " + to_string(arg.elem()), pos);
  }
  if (!flags->associative) throw TypeError("fold of non-associative " + f, pos);
  if (arg.shape() != Shape::List && !flags->commutative) {
    throw TypeError("folding " + f + " over an unordered collection needs commutativity", pos);
  }
  if (arg.shape() == Shape::Set && !flags->idempotent) {
    throw TypeError("folding " + f + " over a set needs idempotence", pos);
  }
  if (arg.mode() == Mode::Opt && !flags->neutral) {
    throw TypeError("folding " + f + " over a possibly empty collection needs a neutral element",
                    pos);
  }
  const FunId& pair_fun = e.fold_pair_fun.empty() ? f : e.fold_pair_fun;
  return fold_result_type(pair_fun, arg, *flags, pos);
}

// ----- distributions --------------------------------------------------------

struct DistEntry {
  std::string args_doc;
  std::string doc;
  std::function<std::optional<Type>(const Type&, SourcePos)> resolve;
  std::function<Dist(const Val&)> make;
};

using DistRegistry = std::map<DistId, DistEntry>;

const DistRegistry& dist_registry() {
  static const DistRegistry reg = [] {
    DistRegistry r;
    {
      DistEntry e;
      e.args_doc = "any collection";
      e.doc = "one element, each instance equally likely; empty pools fail";
      e.resolve = [](const Type& arg, SourcePos) -> std::optional<Type> {
        if (arg.kind() != TypeKind::Coll) return std::nullopt;
        return arg.elem();
      };
      e.make = [](const Val& v) {
        std::vector<Val> pool = coll_instances(v);
        if (pool.empty()) throw EvalError("undefined distribution: uniform over nothing");
        Rational w(1, static_cast<long>(pool.size()));
        std::vector<std::pair<Val, Rational>> parts;
        parts.reserve(pool.size());
        for (const Val& x : pool) parts.emplace_back(x, w);
        return Dist::from_weighted(parts);
      };
      r.emplace("uniform", std::move(e));
    }
    {
      DistEntry e;
      e.args_doc = "rat in [0, 1]";
      e.doc = "1 with the given probability, else 0";
      e.resolve = [](const Type& arg, SourcePos) -> std::optional<Type> {
        if (!subtype(arg, kRat())) return std::nullopt;
        return kBool();
      };
      e.make = [](const Val& v) {
        const Number& p = arg_num(v);
        if (p.is_nan() || p.rat() < 0 || p.rat() > 1) {
          throw EvalError("undefined distribution: bernoulli parameter outside [0, 1]");
        }
        std::vector<std::pair<Val, Rational>> parts;
        parts.emplace_back(Val::boolean(true), p.rat());
        parts.emplace_back(Val::boolean(false), 1 - p.rat());
        return Dist::from_weighted(parts);
      };
      r.emplace("bernoulli", std::move(e));
    }
    return r;
  }();
  return reg;
}

}  // namespace

// ----- public API -----------------------------------------------------------

bool fun_exists(const FunId& f) { return registry().count(f) > 0; }

bool fun_is_surface(const FunId& f) {
  auto it = registry().find(f);
  return it != registry().end() && it->second.surface;
}

Type resolve_fun(const FunId& f, const Type& arg, SourcePos pos) {
  const Entry& e = entry_of(f, pos);
  std::vector<Type> candidates;
  for (const Sig& s : e.sigs) {
    if (subtype(arg, s.arg)) candidates.push_back(s.result);
  }
  for (const auto& fam : e.parametric) {
    if (auto t = fam(arg, pos)) candidates.push_back(*t);
  }
  if (e.flags && arg.kind() == TypeKind::Coll) {
    candidates.push_back(fold_family(f, e, arg, pos));
  }
  if (candidates.empty()) {
    throw TypeError("no signature of " + f + " accepts " + to_string(arg), pos);
  }
  Type out = candidates.front();
  for (std::size_t i = 1; i < candidates.size(); ++i) out = meet(out, candidates[i]);
  return out;
}

Val apply_fun(const FunId& f, const Val& arg) {
  const Entry& e = entry_of(f);
  return e.apply(arg);
}

std::optional<AlgebraicFlags> reduce_flags(const FunId& f, const Type& elem) {
  auto it = registry().find(f);
  if (it == registry().end() || !it->second.flags) return std::nullopt;
  return it->second.flags(elem);
}

std::optional<FunId> specialize_fold(const FunId& f, const Type& arg) {
  if (f != "+" || arg.kind() != TypeKind::Coll) return std::nullopt;
  auto cls = plus_class_of(arg.elem());
  if (!cls) return std::nullopt;
  switch (*cls) {
    case PlusClass::Num:
      return FunId("+#num");
    case PlusClass::List:
      return FunId("+#list");
    case PlusClass::Bag:
      return FunId("+#bag");
    case PlusClass::Set:
      return FunId("+#set");
  }
  return std::nullopt;
}

bool dist_exists(const DistId& d) { return dist_registry().count(d) > 0; }

Type resolve_dist(const DistId& d, const Type& arg, SourcePos pos) {
  auto it = dist_registry().find(d);
  if (it == dist_registry().end()) throw TypeError("unknown distribution " + d, pos);
  if (auto t = it->second.resolve(arg, pos)) return *t;
  throw TypeError("distribution " + d + " does not accept " + to_string(arg), pos);
}

Dist make_dist(const DistId& d, const Val& arg) {
  auto it = dist_registry().find(d);
  if (it == dist_registry().end()) throw InternalError("unknown distribution " + d);
  return it->second.make(arg);
}

std::string builtins_doc() {
  std::ostringstream os;
  os << "# Builtins\n\n";
  os << "Generated from the registry; do not edit by hand.\n\n";
  os << "## Functions\n\n";
  os << "| name | accepts | meaning | in source |\n";
  os << "|---|---|---|---|\n";
  for (const auto& [name, e] : registry()) {
    os << "| `" << name << "` | " << e.args_doc << " | " << e.doc << " | "
       << (e.surface ? "yes" : "internal") << " |\n";
  }
  os << "\n## Distributions\n\n";
  os << "| name | parameter | meaning |\n";
  os << "|---|---|---|\n";
  for (const auto& [name, e] : dist_registry()) {
    os << "| `" << name << "` | " << e.args_doc << " | " << e.doc << " |\n";
  }
  return os.str();
}

}  // namespace alea
