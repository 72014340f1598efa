#include "alea/type.hpp"

#include <algorithm>
#include <variant>

#include "alea/error.hpp"

namespace alea {

struct AnyT {};
struct NoneT {};
struct NumT {
  NumKind kind;
};
struct CollT {
  Shape shape;
  Mode mode;
  Type elem;
};
struct ProdT {
  FieldTypes fields;
};
struct SumT {
  CaseTypes cases;
};

struct TypeRep {
  std::variant<AnyT, NoneT, NumT, CollT, ProdT, SumT> data;
};

struct TypeMaker {
  static Type wrap(std::shared_ptr<const TypeRep> rep) {
    return Type(std::move(rep));
  }
};

namespace {

Type make(std::variant<AnyT, NoneT, NumT, CollT, ProdT, SumT> data) {
  return TypeMaker::wrap(std::make_shared<const TypeRep>(TypeRep{std::move(data)}));
}

}  // namespace

struct TypeAccess {
  static const TypeRep& rep(const Type& t) { return *t.rep_; }
  static bool same(const Type& a, const Type& b) { return a.rep_ == b.rep_; }
};

Type::Type() : Type(any()) {}

Type Type::any() { return make(AnyT{}); }
Type Type::none() { return make(NoneT{}); }
Type Type::num(NumKind k) { return make(NumT{k}); }
Type Type::coll(Shape s, Mode m, Type elem) {
  return make(CollT{s, m, std::move(elem)});
}
Type Type::prod(FieldTypes fields) { return make(ProdT{std::move(fields)}); }
Type Type::sum(CaseTypes cases) { return make(SumT{std::move(cases)}); }

TypeKind Type::kind() const {
  return static_cast<TypeKind>(rep_->data.index());
}

NumKind Type::num_kind() const { return std::get<NumT>(rep_->data).kind; }
Shape Type::shape() const { return std::get<CollT>(rep_->data).shape; }
Mode Type::mode() const { return std::get<CollT>(rep_->data).mode; }
const Type& Type::elem() const { return std::get<CollT>(rep_->data).elem; }
const FieldTypes& Type::fields() const {
  return std::get<ProdT>(rep_->data).fields;
}
const CaseTypes& Type::cases() const {
  return std::get<SumT>(rep_->data).cases;
}

bool operator==(const Type& a, const Type& b) {
  if (TypeAccess::same(a, b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Any:
    case TypeKind::None:
      return true;
    case TypeKind::Num:
      return a.num_kind() == b.num_kind();
    case TypeKind::Coll:
      return a.shape() == b.shape() && a.mode() == b.mode() &&
             a.elem() == b.elem();
    case TypeKind::Prod: {
      const FieldTypes& fa = a.fields();
      const FieldTypes& fb = b.fields();
      if (fa.size() != fb.size()) return false;
      auto ib = fb.begin();
      for (auto ia = fa.begin(); ia != fa.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(ia->second == ib->second))
          return false;
      }
      return true;
    }
    case TypeKind::Sum: {
      const CaseTypes& ca = a.cases();
      const CaseTypes& cb = b.cases();
      if (ca.size() != cb.size()) return false;
      auto ib = cb.begin();
      for (auto ia = ca.begin(); ia != ca.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(ia->second == ib->second))
          return false;
      }
      return true;
    }
  }
  throw InternalError("bad type kind");
}

bool subtype(const Type& a, const Type& b) {
  if (b.kind() == TypeKind::Any) return true;
  if (a.kind() == TypeKind::None) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Num:
      return static_cast<int>(a.num_kind()) <= static_cast<int>(b.num_kind());
    case TypeKind::Coll:
      return a.shape() == b.shape() &&
             (a.mode() == Mode::Pos || b.mode() == Mode::Opt) &&
             subtype(a.elem(), b.elem());
    case TypeKind::Prod: {
      for (const auto& [f, tb] : b.fields()) {
        auto it = a.fields().find(f);
        if (it == a.fields().end() || !subtype(it->second, tb)) return false;
      }
      return true;
    }
    case TypeKind::Sum: {
      for (const auto& [c, ta] : a.cases()) {
        auto it = b.cases().find(c);
        if (it == b.cases().end() || !subtype(ta, it->second)) return false;
      }
      return true;
    }
    default:
      throw InternalError("bad type kind");
  }
}

Type join(const Type& a, const Type& b) {
  if (a == b) return a;
  if (a.kind() == TypeKind::None) return b;
  if (b.kind() == TypeKind::None) return a;
  if (a.kind() == TypeKind::Any || b.kind() == TypeKind::Any)
    return Type::any();
  if (a.kind() != b.kind()) return Type::any();
  switch (a.kind()) {
    case TypeKind::Num:
      return Type::num(static_cast<NumKind>(
          std::max(static_cast<int>(a.num_kind()),
                   static_cast<int>(b.num_kind()))));
    case TypeKind::Coll: {
      if (a.shape() != b.shape()) return Type::any();
      Mode m = (a.mode() == Mode::Pos && b.mode() == Mode::Pos) ? Mode::Pos
                                                                : Mode::Opt;
      return Type::coll(a.shape(), m, join(a.elem(), b.elem()));
    }
    case TypeKind::Prod: {
      FieldTypes out;
      for (const auto& [f, ta] : a.fields()) {
        auto it = b.fields().find(f);
        if (it != b.fields().end()) out.emplace(f, join(ta, it->second));
      }
      return Type::prod(std::move(out));
    }
    case TypeKind::Sum: {
      CaseTypes out = a.cases();
      for (const auto& [c, tb] : b.cases()) {
        auto it = out.find(c);
        if (it == out.end())
          out.emplace(c, tb);
        else
          it->second = join(it->second, tb);
      }
      return Type::sum(std::move(out));
    }
    default:
      throw InternalError("bad type kind");
  }
}

Type meet(const Type& a, const Type& b) {
  if (a == b) return a;
  if (a.kind() == TypeKind::Any) return b;
  if (b.kind() == TypeKind::Any) return a;
  if (a.kind() == TypeKind::None || b.kind() == TypeKind::None)
    return Type::none();
  if (a.kind() != b.kind()) return Type::none();
  switch (a.kind()) {
    case TypeKind::Num:
      return Type::num(static_cast<NumKind>(
          std::min(static_cast<int>(a.num_kind()),
                   static_cast<int>(b.num_kind()))));
    case TypeKind::Coll: {
      if (a.shape() != b.shape()) return Type::none();
      Mode m = (a.mode() == Mode::Pos || b.mode() == Mode::Pos) ? Mode::Pos
                                                                : Mode::Opt;
      return Type::coll(a.shape(), m, meet(a.elem(), b.elem()));
    }
    case TypeKind::Prod: {
      FieldTypes out = a.fields();
      for (const auto& [f, tb] : b.fields()) {
        auto it = out.find(f);
        if (it == out.end())
          out.emplace(f, tb);
        else
          it->second = meet(it->second, tb);
      }
      return Type::prod(std::move(out));
    }
    case TypeKind::Sum: {
      CaseTypes out;
      for (const auto& [c, ta] : a.cases()) {
        auto it = b.cases().find(c);
        if (it != b.cases().end()) out.emplace(c, meet(ta, it->second));
      }
      return Type::sum(std::move(out));
    }
    default:
      throw InternalError("bad type kind");
  }
}

bool type_empty(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Any:
    case TypeKind::Num:
      return false;
    case TypeKind::None:
      return true;
    case TypeKind::Coll:
      return t.mode() == Mode::Pos && type_empty(t.elem());
    case TypeKind::Prod: {
      for (const auto& [f, ft] : t.fields())
        if (type_empty(ft)) return true;
      return false;
    }
    case TypeKind::Sum: {
      for (const auto& [c, ct] : t.cases())
        if (!type_empty(ct)) return false;
      return true;
    }
  }
  throw InternalError("bad type kind");
}

namespace {

bool num_inhabits(const Number& n, NumKind k) {
  switch (k) {
    case NumKind::Bool:
      return !n.is_nan() &&
             (cmp(n.rat(), Rational(0)) == 0 || cmp(n.rat(), Rational(1)) == 0);
    case NumKind::Nat:
      return n.is_nan() || (n.is_integer() && sgn(n.rat()) >= 0);
    case NumKind::Int:
      return n.is_nan() || n.is_integer();
    case NumKind::Rat:
      return true;
  }
  throw InternalError("bad num kind");
}

}  // namespace

bool inhabits(const Val& v, const Type& t) {
  switch (t.kind()) {
    case TypeKind::Any:
      return true;
    case TypeKind::None:
      return false;
    case TypeKind::Num:
      return v.kind() == ValKind::Num && num_inhabits(v.num(), t.num_kind());
    case TypeKind::Coll: {
      if (!v.is_coll() || v.shape() != t.shape()) return false;
      if (t.mode() == Mode::Pos && coll_size(v) == 0) return false;
      switch (v.shape()) {
        case Shape::List:
          for (const Val& x : v.list())
            if (!inhabits(x, t.elem())) return false;
          return true;
        case Shape::Bag:
          for (const auto& [k, m] : v.bag())
            if (!inhabits(k, t.elem())) return false;
          return true;
        case Shape::Set:
          for (const Val& x : v.set())
            if (!inhabits(x, t.elem())) return false;
          return true;
      }
      throw InternalError("bad shape");
    }
    case TypeKind::Prod: {
      if (v.kind() != ValKind::Record) return false;
      for (const auto& [f, ft] : t.fields()) {
        auto it = v.record().find(f);
        if (it == v.record().end() || !inhabits(it->second, ft)) return false;
      }
      return true;
    }
    case TypeKind::Sum: {
      if (v.kind() != ValKind::Tag) return false;
      auto it = t.cases().find(v.tag_case());
      return it != t.cases().end() && inhabits(v.tag_payload(), it->second);
    }
  }
  throw InternalError("bad type kind");
}

Type least_type_of(const Val& v) {
  switch (v.kind()) {
    case ValKind::Num: {
      const Number& n = v.num();
      // NaN lives in every numeric kind above bool, so nat is its least.
      if (n.is_nan()) return Type::num(NumKind::Nat);
      if (cmp(n.rat(), Rational(0)) == 0 || cmp(n.rat(), Rational(1)) == 0)
        return Type::num(NumKind::Bool);
      if (n.is_integer()) return Type::num(sgn(n.rat()) > 0 ? NumKind::Nat : NumKind::Int);
      return Type::num(NumKind::Rat);
    }
    case ValKind::List:
    case ValKind::Bag:
    case ValKind::Set: {
      Type elem = Type::none();
      for (const Val& x : coll_instances(v)) elem = join(elem, least_type_of(x));
      Mode m = coll_size(v) > 0 ? Mode::Pos : Mode::Opt;
      return Type::coll(v.shape(), m, std::move(elem));
    }
    case ValKind::Record: {
      FieldTypes fields;
      for (const auto& [f, x] : v.record()) fields.emplace(f, least_type_of(x));
      return Type::prod(std::move(fields));
    }
    case ValKind::Tag:
      return Type::sum({{v.tag_case(), least_type_of(v.tag_payload())}});
  }
  throw InternalError("bad value kind");
}

std::string to_string(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Any:
      return "any";
    case TypeKind::None:
      return "none";
    case TypeKind::Num:
      switch (t.num_kind()) {
        case NumKind::Bool:
          return "bool";
        case NumKind::Nat:
          return "nat";
        case NumKind::Int:
          return "int";
        case NumKind::Rat:
          return "rat";
      }
      throw InternalError("bad num kind");
    case TypeKind::Coll: {
      std::string s = to_string(t.shape());
      if (t.mode() == Mode::Pos) s += "+";
      return s + " of " + to_string(t.elem());
    }
    case TypeKind::Prod: {
      std::string s = "(";
      bool first = true;
      for (const auto& [f, ft] : t.fields()) {
        if (!first) s += ", ";
        first = false;
        s += to_string(f) + ": " + to_string(ft);
      }
      return s + ")";
    }
    case TypeKind::Sum: {
      if (t.cases().empty()) return "@|";
      std::string s;
      bool first = true;
      for (const auto& [c, ct] : t.cases()) {
        if (!first) s += " | ";
        first = false;
        s += "@" + c;
        if (!(ct == Type::unit())) s += "(" + to_string(ct) + ")";
      }
      return s;
    }
  }
  throw InternalError("bad type kind");
}

}  // namespace alea
