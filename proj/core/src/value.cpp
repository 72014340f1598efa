#include "alea/value.hpp"

#include <algorithm>

#include "alea/error.hpp"

namespace alea {

FieldId FieldId::positional(std::uint32_t index) {
  if (index == 0) throw InternalError("positional field index must be >= 1");
  FieldId f;
  f.id_ = index;
  return f;
}

FieldId FieldId::named(std::string name) {
  FieldId f;
  f.id_ = std::move(name);
  return f;
}

std::string to_string(const FieldId& f) {
  if (f.is_positional()) return "#" + std::to_string(f.index());
  return f.name();
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::List:
      return "list";
    case Shape::Bag:
      return "bag";
    case Shape::Set:
      return "set";
  }
  throw InternalError("bad shape");
}

namespace {

template <class T>
bool all_nan_free(const T& children) {
  return std::all_of(children.begin(), children.end(),
                     [](const Val& v) { return v.nan_free(); });
}

}  // namespace

struct ValMaker {
  static Val wrap(std::shared_ptr<const ValRep> rep) {
    return Val(std::move(rep));
  }
};

namespace {

Val make(std::variant<Number, ListVal, BagVal, SetVal, RecordVal, TagVal> data,
         bool nan_free) {
  return ValMaker::wrap(
      std::make_shared<const ValRep>(ValRep{std::move(data), nan_free}));
}

}  // namespace

Val::Val() : Val(num(0L)) {}

Val Val::num(Number n) {
  bool ok = !n.is_nan();
  return make(std::move(n), ok);
}

Val Val::list(ListVal xs) {
  bool ok = all_nan_free(xs);
  return make(std::move(xs), ok);
}

Val Val::bag(BagVal b) {
  bool ok = true;
  for (const auto& [k, m] : b) {
    if (m == 0) throw InternalError("bag multiplicity must be > 0");
    ok = ok && k.nan_free();
  }
  return make(std::move(b), ok);
}

Val Val::set(SetVal s) {
  bool ok = all_nan_free(s);
  return make(std::move(s), ok);
}

Val Val::record(RecordVal r) {
  bool ok = std::all_of(r.begin(), r.end(),
                        [](const auto& kv) { return kv.second.nan_free(); });
  return make(std::move(r), ok);
}

Val Val::tag(CaseId c, Val payload) {
  bool ok = payload.nan_free();
  return make(TagVal{std::move(c), std::move(payload)}, ok);
}

Val Val::empty_coll(Shape s) {
  switch (s) {
    case Shape::List:
      return list({});
    case Shape::Bag:
      return bag({});
    case Shape::Set:
      return set({});
  }
  throw InternalError("bad shape");
}

Val Val::coll_of(Shape s, std::span<const Val> elems) {
  switch (s) {
    case Shape::List:
      return list(ListVal(elems.begin(), elems.end()));
    case Shape::Bag: {
      BagVal b;
      for (const Val& v : elems) b[v] += 1;
      return bag(std::move(b));
    }
    case Shape::Set:
      return set(SetVal(elems.begin(), elems.end()));
  }
  throw InternalError("bad shape");
}

ValKind Val::kind() const { return static_cast<ValKind>(rep_->data.index()); }

bool Val::is_coll() const {
  ValKind k = kind();
  return k == ValKind::List || k == ValKind::Bag || k == ValKind::Set;
}

Shape Val::shape() const {
  switch (kind()) {
    case ValKind::List:
      return Shape::List;
    case ValKind::Bag:
      return Shape::Bag;
    case ValKind::Set:
      return Shape::Set;
    default:
      throw InternalError("shape() on a non-collection");
  }
}

const Number& Val::num() const { return std::get<Number>(rep_->data); }
const ListVal& Val::list() const { return std::get<ListVal>(rep_->data); }
const BagVal& Val::bag() const { return std::get<BagVal>(rep_->data); }
const SetVal& Val::set() const { return std::get<SetVal>(rep_->data); }
const RecordVal& Val::record() const { return std::get<RecordVal>(rep_->data); }
const CaseId& Val::tag_case() const {
  return std::get<TagVal>(rep_->data).case_id;
}
const Val& Val::tag_payload() const {
  return std::get<TagVal>(rep_->data).payload;
}

bool Val::nan_free() const { return rep_->nan_free; }

namespace {

template <class It, class Cmp>
int lex_compare(It a, It aEnd, It b, It bEnd, Cmp cmp) {
  for (; a != aEnd && b != bEnd; ++a, ++b) {
    int c = cmp(*a, *b);
    if (c != 0) return c;
  }
  if (a != aEnd) return 1;
  if (b != bEnd) return -1;
  return 0;
}

int field_compare(const FieldId& a, const FieldId& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

int meta_compare(const Val& a, const Val& b) {
  if (a.rep_ == b.rep_) return 0;
  int ka = static_cast<int>(a.kind());
  int kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case ValKind::Num:
      return num_order(a.num(), b.num());
    case ValKind::List:
      return lex_compare(a.list().begin(), a.list().end(), b.list().begin(),
                         b.list().end(), meta_compare);
    case ValKind::Bag:
      return lex_compare(
          a.bag().begin(), a.bag().end(), b.bag().begin(), b.bag().end(),
          [](const auto& x, const auto& y) {
            int c = meta_compare(x.first, y.first);
            if (c != 0) return c;
            return x.second < y.second ? -1 : (x.second > y.second ? 1 : 0);
          });
    case ValKind::Set:
      return lex_compare(a.set().begin(), a.set().end(), b.set().begin(),
                         b.set().end(), meta_compare);
    case ValKind::Record:
      return lex_compare(a.record().begin(), a.record().end(),
                         b.record().begin(), b.record().end(),
                         [](const auto& x, const auto& y) {
                           int c = field_compare(x.first, y.first);
                           if (c != 0) return c;
                           return meta_compare(x.second, y.second);
                         });
    case ValKind::Tag: {
      int c = a.tag_case().compare(b.tag_case());
      if (c != 0) return c < 0 ? -1 : 1;
      return meta_compare(a.tag_payload(), b.tag_payload());
    }
  }
  throw InternalError("bad value kind");
}

bool meta_equal(const Val& a, const Val& b) { return meta_compare(a, b) == 0; }

bool star_equal(const Val& a, const Val& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValKind::Num:
      return num_compare(Rel::Eq, a.num(), b.num());
    case ValKind::List:
    case ValKind::Bag:
    case ValKind::Set:
      return star_subset(a, b) && star_subset(b, a);
    case ValKind::Record: {
      const RecordVal& ra = a.record();
      const RecordVal& rb = b.record();
      if (ra.size() != rb.size()) return false;
      auto ia = ra.begin();
      auto ib = rb.begin();
      for (; ia != ra.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!star_equal(ia->second, ib->second)) return false;
      }
      return true;
    }
    case ValKind::Tag:
      return a.tag_case() == b.tag_case() &&
             star_equal(a.tag_payload(), b.tag_payload());
  }
  throw InternalError("bad value kind");
}

bool star_subset(const Val& a, const Val& b) {
  if (!a.is_coll() || !b.is_coll() || a.shape() != b.shape())
    throw InternalError("star_subset: collections of equal shape required");
  switch (a.shape()) {
    case Shape::List: {
      const ListVal& xs = a.list();
      const ListVal& ys = b.list();
      if (xs.empty()) return true;
      if (xs.size() > ys.size()) return false;
      for (std::size_t off = 0; off + xs.size() <= ys.size(); ++off) {
        bool all = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          if (!star_equal(xs[i], ys[off + i])) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    }
    case Shape::Bag: {
      // An instance containing NaN is object-unequal to everything, so it
      // can never be matched; otherwise object equality coincides with
      // meta-identity and injective matching reduces to multiplicity
      // comparison per key.
      for (const auto& [k, m] : a.bag()) {
        if (!k.nan_free()) return false;
        auto it = b.bag().find(k);
        if (it == b.bag().end() || m > it->second) return false;
      }
      return true;
    }
    case Shape::Set: {
      for (const Val& x : a.set()) {
        bool found = false;
        for (const Val& y : b.set()) {
          if (star_equal(x, y)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      return true;
    }
  }
  throw InternalError("bad shape");
}

bool star_compare(Rel rel, const Val& a, const Val& b) {
  switch (rel) {
    case Rel::Eq:
      return star_equal(a, b);
    case Rel::Ne:
      return !star_equal(a, b);
    case Rel::Le:
      return star_subset(a, b);
    case Rel::Ge:
      return star_subset(b, a);
    case Rel::Lt:
      return star_subset(a, b) && !star_subset(b, a);
    case Rel::Gt:
      return star_subset(b, a) && !star_subset(a, b);
  }
  throw InternalError("bad rel");
}

std::uint64_t coll_size(const Val& c) {
  switch (c.kind()) {
    case ValKind::List:
      return c.list().size();
    case ValKind::Bag: {
      std::uint64_t n = 0;
      for (const auto& [k, m] : c.bag()) n += m;
      return n;
    }
    case ValKind::Set:
      return c.set().size();
    default:
      throw InternalError("coll_size on a non-collection");
  }
}

std::vector<Val> coll_instances(const Val& c) {
  std::vector<Val> out;
  switch (c.kind()) {
    case ValKind::List:
      out = c.list();
      break;
    case ValKind::Bag:
      for (const auto& [k, m] : c.bag())
        for (std::uint64_t i = 0; i < m; ++i) out.push_back(k);
      break;
    case ValKind::Set:
      out.assign(c.set().begin(), c.set().end());
      break;
    default:
      throw InternalError("coll_instances on a non-collection");
  }
  return out;
}

Val coll_concat(const Val& a, const Val& b) {
  if (!a.is_coll() || !b.is_coll() || a.shape() != b.shape())
    throw InternalError("coll_concat: collections of equal shape required");
  switch (a.shape()) {
    case Shape::List: {
      ListVal xs = a.list();
      xs.insert(xs.end(), b.list().begin(), b.list().end());
      return Val::list(std::move(xs));
    }
    case Shape::Bag: {
      BagVal m = a.bag();
      for (const auto& [k, n] : b.bag()) m[k] += n;
      return Val::bag(std::move(m));
    }
    case Shape::Set: {
      SetVal s = a.set();
      s.insert(b.set().begin(), b.set().end());
      return Val::set(std::move(s));
    }
  }
  throw InternalError("bad shape");
}

Val coll_convert(const Val& v, Shape target) {
  if (!v.is_coll()) throw InternalError("coll_convert on a non-collection");
  Shape s = v.shape();
  if (s == target) return v;
  if (s == Shape::List && target == Shape::Bag) {
    BagVal b;
    for (const Val& x : v.list()) b[x] += 1;
    return Val::bag(std::move(b));
  }
  if (s == Shape::List && target == Shape::Set)
    return Val::set(SetVal(v.list().begin(), v.list().end()));
  if (s == Shape::Bag && target == Shape::Set) {
    SetVal out;
    for (const auto& [k, m] : v.bag()) out.insert(k);
    return Val::set(std::move(out));
  }
  throw InternalError("coll_convert: only list->bag->set conversions exist");
}

Val without(const Val& coll, const Val& x) {
  if (coll.kind() == ValKind::Bag) {
    BagVal b = coll.bag();
    auto it = b.find(x);
    if (it == b.end()) throw InternalError("without: instance not present");
    if (it->second == 1)
      b.erase(it);
    else
      --it->second;
    return Val::bag(std::move(b));
  }
  if (coll.kind() == ValKind::Set) {
    SetVal s = coll.set();
    if (s.erase(x) == 0) throw InternalError("without: element not present");
    return Val::set(std::move(s));
  }
  throw InternalError("without: bag or set required");
}

Val mults(const Val& bag) {
  if (bag.kind() != ValKind::Bag) throw InternalError("mults: bag required");
  BagVal out;
  for (const auto& [k, m] : bag.bag())
    out[Val::num(Number(Rational(static_cast<unsigned long>(m))))] += 1;
  return Val::bag(std::move(out));
}

}  // namespace alea
