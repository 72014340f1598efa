#include "alea/ast.hpp"

#include <sstream>
#include <variant>

namespace alea {

namespace rep {

struct Var {
  VarId name;
};
struct Const {
  Val val;
  Type type;
};
struct App {
  FunId fun;
  Expr arg;
};
struct Choose {
  std::vector<std::pair<Expr, Rational>> branches;
};
struct Exp {
  Expr inner;
};
struct DistDraw {
  DistId dist;
  Expr param;
};
struct Let {
  Expr bound;
  VarId var;
  Expr body;
};
struct NSwitch {
  Expr scrutinee;
  NCases cases;
  std::optional<Expr> dflt;
};
struct Iter {
  Expr source;
  VarId var;
  Expr body;
  Shape shape;
};
struct Tuple {
  std::map<FieldId, Expr> fields;
};
struct Select {
  Expr base;
  FieldId field;
};
struct Cons {
  CaseId case_id;
  Expr payload;
};
struct CSwitch {
  Expr scrutinee;
  std::map<CaseId, CHandler> handlers;
  std::optional<Expr> dflt;
};

using Data = std::variant<Var, Const, App, Choose, Exp, DistDraw, Let, NSwitch,
                          Iter, Tuple, Select, Cons, CSwitch>;

}  // namespace rep

struct ExprRep {
  rep::Data data;
  SourcePos pos;
  bool s_det;
};

struct ExprMaker {
  static Expr wrap(std::shared_ptr<const ExprRep> rep) {
    return Expr(std::move(rep));
  }
};

struct ExprAccess {
  static const rep::Data& data(const Expr& e) { return e.rep_->data; }
  static bool same(const Expr& a, const Expr& b) { return a.rep_ == b.rep_; }
};

namespace {

Expr make(rep::Data data, SourcePos pos, bool s_det) {
  return ExprMaker::wrap(
      std::make_shared<const ExprRep>(ExprRep{std::move(data), pos, s_det}));
}

}  // namespace

Expr Expr::var(VarId x, SourcePos pos) {
  return make(rep::Var{std::move(x)}, pos, true);
}

Expr Expr::cnst(Val v, Type t, SourcePos pos) {
  if (!inhabits(v, t)) throw InternalError("constant outside declared type");
  return make(rep::Const{std::move(v), std::move(t)}, pos, true);
}

Expr Expr::cnst(Val v, SourcePos pos) {
  Type t = least_type_of(v);
  return make(rep::Const{std::move(v), std::move(t)}, pos, true);
}

Expr Expr::app(FunId f, Expr arg, SourcePos pos) {
  bool det = arg.s_deterministic();
  return make(rep::App{std::move(f), std::move(arg)}, pos, det);
}

Expr Expr::choose(std::vector<std::pair<Expr, Rational>> branches,
                  SourcePos pos) {
  if (branches.empty()) throw InternalError("choose: no branches");
  Rational total(0);
  for (const auto& [e, p] : branches) {
    if (sgn(p) <= 0) throw InternalError("choose: weight not positive");
    total += p;
  }
  if (cmp(total, Rational(1)) != 0)
    throw InternalError("choose: weights must sum to 1");
  return make(rep::Choose{std::move(branches)}, pos, false);
}

Expr Expr::expect(Expr e, SourcePos pos) {
  return make(rep::Exp{std::move(e)}, pos, false);
}

Expr Expr::dist_draw(DistId d, Expr param, SourcePos pos) {
  return make(rep::DistDraw{std::move(d), std::move(param)}, pos, false);
}

Expr Expr::let(Expr bound, VarId x, Expr body, SourcePos pos) {
  bool det = bound.s_deterministic() && body.s_deterministic();
  return make(rep::Let{std::move(bound), std::move(x), std::move(body)}, pos,
              det);
}

Expr Expr::nswitch(Expr scrutinee, NCases cases, std::optional<Expr> dflt,
                   SourcePos pos) {
  bool det = scrutinee.s_deterministic();
  for (const auto& [k, e] : cases) det = det && e.s_deterministic();
  if (dflt) det = det && dflt->s_deterministic();
  return make(rep::NSwitch{std::move(scrutinee), std::move(cases),
                           std::move(dflt)},
              pos, det);
}

Expr Expr::iter(Expr source, VarId x, Expr body, Shape shape, SourcePos pos) {
  bool det = source.s_deterministic() && body.s_deterministic();
  return make(rep::Iter{std::move(source), std::move(x), std::move(body),
                        shape},
              pos, det);
}

Expr Expr::tuple(std::map<FieldId, Expr> fields, SourcePos pos) {
  bool det = true;
  for (const auto& [f, e] : fields) det = det && e.s_deterministic();
  return make(rep::Tuple{std::move(fields)}, pos, det);
}

Expr Expr::select(Expr e, FieldId f, SourcePos pos) {
  bool det = e.s_deterministic();
  return make(rep::Select{std::move(e), std::move(f)}, pos, det);
}

Expr Expr::cons(CaseId c, Expr payload, SourcePos pos) {
  bool det = payload.s_deterministic();
  return make(rep::Cons{std::move(c), std::move(payload)}, pos, det);
}

Expr Expr::cswitch(Expr scrutinee, std::map<CaseId, CHandler> handlers,
                   std::optional<Expr> dflt, SourcePos pos) {
  bool det = scrutinee.s_deterministic();
  for (const auto& [c, h] : handlers) det = det && h.body.s_deterministic();
  if (dflt) det = det && dflt->s_deterministic();
  return make(rep::CSwitch{std::move(scrutinee), std::move(handlers),
                           std::move(dflt)},
              pos, det);
}

ExprKind Expr::kind() const {
  return static_cast<ExprKind>(rep_->data.index());
}

SourcePos Expr::pos() const { return rep_->pos; }
bool Expr::s_deterministic() const { return rep_->s_det; }

const VarId& Expr::var_name() const {
  return std::get<rep::Var>(rep_->data).name;
}
const Val& Expr::const_val() const {
  return std::get<rep::Const>(rep_->data).val;
}
const Type& Expr::const_type() const {
  return std::get<rep::Const>(rep_->data).type;
}
const FunId& Expr::fun() const { return std::get<rep::App>(rep_->data).fun; }
const Expr& Expr::arg() const { return std::get<rep::App>(rep_->data).arg; }
const std::vector<std::pair<Expr, Rational>>& Expr::branches() const {
  return std::get<rep::Choose>(rep_->data).branches;
}
const Expr& Expr::inner() const {
  switch (kind()) {
    case ExprKind::Exp:
      return std::get<rep::Exp>(rep_->data).inner;
    case ExprKind::Select:
      return std::get<rep::Select>(rep_->data).base;
    case ExprKind::Cons:
      return std::get<rep::Cons>(rep_->data).payload;
    default:
      throw InternalError("inner() on wrong node kind");
  }
}
const DistId& Expr::dist_id() const {
  return std::get<rep::DistDraw>(rep_->data).dist;
}
const Expr& Expr::bound() const {
  if (kind() == ExprKind::DistDraw)
    return std::get<rep::DistDraw>(rep_->data).param;
  return std::get<rep::Let>(rep_->data).bound;
}
const VarId& Expr::let_var() const {
  return std::get<rep::Let>(rep_->data).var;
}
const Expr& Expr::body() const {
  if (kind() == ExprKind::Iter) return std::get<rep::Iter>(rep_->data).body;
  return std::get<rep::Let>(rep_->data).body;
}
const Expr& Expr::scrutinee() const {
  if (kind() == ExprKind::NSwitch)
    return std::get<rep::NSwitch>(rep_->data).scrutinee;
  return std::get<rep::CSwitch>(rep_->data).scrutinee;
}
const NCases& Expr::ncases() const {
  return std::get<rep::NSwitch>(rep_->data).cases;
}
const std::optional<Expr>& Expr::dflt() const {
  if (kind() == ExprKind::NSwitch)
    return std::get<rep::NSwitch>(rep_->data).dflt;
  return std::get<rep::CSwitch>(rep_->data).dflt;
}
const Expr& Expr::source() const {
  return std::get<rep::Iter>(rep_->data).source;
}
const VarId& Expr::iter_var() const {
  return std::get<rep::Iter>(rep_->data).var;
}
Shape Expr::iter_shape() const {
  return std::get<rep::Iter>(rep_->data).shape;
}
const std::map<FieldId, Expr>& Expr::tuple_fields() const {
  return std::get<rep::Tuple>(rep_->data).fields;
}
const FieldId& Expr::field() const {
  return std::get<rep::Select>(rep_->data).field;
}
const CaseId& Expr::case_id() const {
  return std::get<rep::Cons>(rep_->data).case_id;
}
const std::map<CaseId, CHandler>& Expr::handlers() const {
  return std::get<rep::CSwitch>(rep_->data).handlers;
}

bool operator==(const Expr& a, const Expr& b) {
  if (ExprAccess::same(a, b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Var:
      return a.var_name() == b.var_name();
    case ExprKind::Const:
      return meta_equal(a.const_val(), b.const_val()) &&
             a.const_type() == b.const_type();
    case ExprKind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case ExprKind::Choose: {
      const auto& xs = a.branches();
      const auto& ys = b.branches();
      if (xs.size() != ys.size()) return false;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (cmp(xs[i].second, ys[i].second) != 0) return false;
        if (xs[i].first != ys[i].first) return false;
      }
      return true;
    }
    case ExprKind::Exp:
    case ExprKind::Select:
    case ExprKind::Cons: {
      if (a.kind() == ExprKind::Select && a.field() != b.field()) return false;
      if (a.kind() == ExprKind::Cons && a.case_id() != b.case_id())
        return false;
      return a.inner() == b.inner();
    }
    case ExprKind::DistDraw:
      return a.dist_id() == b.dist_id() && a.bound() == b.bound();
    case ExprKind::Let:
      return a.let_var() == b.let_var() && a.bound() == b.bound() &&
             a.body() == b.body();
    case ExprKind::NSwitch: {
      if (!(a.scrutinee() == b.scrutinee())) return false;
      const NCases& xs = a.ncases();
      const NCases& ys = b.ncases();
      if (xs.size() != ys.size()) return false;
      auto iy = ys.begin();
      for (auto ix = xs.begin(); ix != xs.end(); ++ix, ++iy) {
        if (cmp(ix->first, iy->first) != 0) return false;
        if (ix->second != iy->second) return false;
      }
      if (a.dflt().has_value() != b.dflt().has_value()) return false;
      return !a.dflt() || *a.dflt() == *b.dflt();
    }
    case ExprKind::Iter:
      return a.iter_shape() == b.iter_shape() &&
             a.iter_var() == b.iter_var() && a.source() == b.source() &&
             a.body() == b.body();
    case ExprKind::Tuple: {
      const auto& xs = a.tuple_fields();
      const auto& ys = b.tuple_fields();
      if (xs.size() != ys.size()) return false;
      auto iy = ys.begin();
      for (auto ix = xs.begin(); ix != xs.end(); ++ix, ++iy) {
        if (ix->first != iy->first || ix->second != iy->second) return false;
      }
      return true;
    }
    case ExprKind::CSwitch: {
      if (!(a.scrutinee() == b.scrutinee())) return false;
      const auto& xs = a.handlers();
      const auto& ys = b.handlers();
      if (xs.size() != ys.size()) return false;
      auto iy = ys.begin();
      for (auto ix = xs.begin(); ix != xs.end(); ++ix, ++iy) {
        if (ix->first != iy->first || ix->second.var != iy->second.var ||
            ix->second.body != iy->second.body)
          return false;
      }
      if (a.dflt().has_value() != b.dflt().has_value()) return false;
      return !a.dflt() || *a.dflt() == *b.dflt();
    }
  }
  throw InternalError("bad expr kind");
}

namespace {

void free_vars_into(const Expr& e, std::set<VarId>& bound,
                    std::set<VarId>& out) {
  switch (e.kind()) {
    case ExprKind::Var:
      if (!bound.count(e.var_name())) out.insert(e.var_name());
      return;
    case ExprKind::Const:
      return;
    case ExprKind::App:
      free_vars_into(e.arg(), bound, out);
      return;
    case ExprKind::Choose:
      for (const auto& [br, p] : e.branches()) free_vars_into(br, bound, out);
      return;
    case ExprKind::Exp:
    case ExprKind::Select:
    case ExprKind::Cons:
      free_vars_into(e.inner(), bound, out);
      return;
    case ExprKind::DistDraw:
      free_vars_into(e.bound(), bound, out);
      return;
    case ExprKind::Let: {
      free_vars_into(e.bound(), bound, out);
      bool fresh = bound.insert(e.let_var()).second;
      free_vars_into(e.body(), bound, out);
      if (fresh) bound.erase(e.let_var());
      return;
    }
    case ExprKind::NSwitch:
      free_vars_into(e.scrutinee(), bound, out);
      for (const auto& [k, br] : e.ncases()) free_vars_into(br, bound, out);
      if (e.dflt()) free_vars_into(*e.dflt(), bound, out);
      return;
    case ExprKind::Iter: {
      free_vars_into(e.source(), bound, out);
      bool fresh = bound.insert(e.iter_var()).second;
      free_vars_into(e.body(), bound, out);
      if (fresh) bound.erase(e.iter_var());
      return;
    }
    case ExprKind::Tuple:
      for (const auto& [f, fe] : e.tuple_fields())
        free_vars_into(fe, bound, out);
      return;
    case ExprKind::CSwitch: {
      free_vars_into(e.scrutinee(), bound, out);
      for (const auto& [c, h] : e.handlers()) {
        bool fresh = bound.insert(h.var).second;
        free_vars_into(h.body, bound, out);
        if (fresh) bound.erase(h.var);
      }
      if (e.dflt()) free_vars_into(*e.dflt(), bound, out);
      return;
    }
  }
  throw InternalError("bad expr kind");
}

}  // namespace

std::set<VarId> free_vars(const Expr& e) {
  std::set<VarId> bound;
  std::set<VarId> out;
  free_vars_into(e, bound, out);
  return out;
}

namespace {

void render_val_sexpr(const Val& v, std::ostream& os);

void render_val_sexpr(const Val& v, std::ostream& os) {
  switch (v.kind()) {
    case ValKind::Num:
      os << to_string(v.num());
      return;
    case ValKind::List:
    case ValKind::Bag:
    case ValKind::Set: {
      os << "(" << to_string(v.shape());
      for (const Val& x : coll_instances(v)) {
        os << " ";
        render_val_sexpr(x, os);
      }
      os << ")";
      return;
    }
    case ValKind::Record: {
      os << "(record";
      for (const auto& [f, x] : v.record()) {
        os << " (" << to_string(f) << " ";
        render_val_sexpr(x, os);
        os << ")";
      }
      os << ")";
      return;
    }
    case ValKind::Tag: {
      os << "(tag " << v.tag_case() << " ";
      render_val_sexpr(v.tag_payload(), os);
      os << ")";
      return;
    }
  }
}

void render_sexpr(const Expr& e, std::ostream& os) {
  switch (e.kind()) {
    case ExprKind::Var:
      os << "(var " << e.var_name() << ")";
      return;
    case ExprKind::Const:
      os << "(const ";
      render_val_sexpr(e.const_val(), os);
      os << " " << to_string(e.const_type()) << ")";
      return;
    case ExprKind::App:
      os << "(app \"" << e.fun() << "\" ";
      render_sexpr(e.arg(), os);
      os << ")";
      return;
    case ExprKind::Choose: {
      os << "(choose";
      for (const auto& [br, p] : e.branches()) {
        os << " (" << p.get_str() << " ";
        render_sexpr(br, os);
        os << ")";
      }
      os << ")";
      return;
    }
    case ExprKind::Exp:
      os << "(expect ";
      render_sexpr(e.inner(), os);
      os << ")";
      return;
    case ExprKind::DistDraw:
      os << "(draw " << e.dist_id() << " ";
      render_sexpr(e.bound(), os);
      os << ")";
      return;
    case ExprKind::Let:
      os << "(let " << e.let_var() << " ";
      render_sexpr(e.bound(), os);
      os << " ";
      render_sexpr(e.body(), os);
      os << ")";
      return;
    case ExprKind::NSwitch: {
      os << "(nswitch ";
      render_sexpr(e.scrutinee(), os);
      for (const auto& [k, br] : e.ncases()) {
        os << " (" << k.get_str() << " ";
        render_sexpr(br, os);
        os << ")";
      }
      if (e.dflt()) {
        os << " (default ";
        render_sexpr(*e.dflt(), os);
        os << ")";
      }
      os << ")";
      return;
    }
    case ExprKind::Iter:
      os << "(iter " << to_string(e.iter_shape()) << " " << e.iter_var()
         << " ";
      render_sexpr(e.source(), os);
      os << " ";
      render_sexpr(e.body(), os);
      os << ")";
      return;
    case ExprKind::Tuple: {
      os << "(tuple";
      for (const auto& [f, fe] : e.tuple_fields()) {
        os << " (" << to_string(f) << " ";
        render_sexpr(fe, os);
        os << ")";
      }
      os << ")";
      return;
    }
    case ExprKind::Select:
      os << "(select ";
      render_sexpr(e.inner(), os);
      os << " " << to_string(e.field()) << ")";
      return;
    case ExprKind::Cons:
      os << "(cons " << e.case_id() << " ";
      render_sexpr(e.inner(), os);
      os << ")";
      return;
    case ExprKind::CSwitch: {
      os << "(cswitch ";
      render_sexpr(e.scrutinee(), os);
      for (const auto& [c, h] : e.handlers()) {
        os << " (" << c << " " << h.var << " ";
        render_sexpr(h.body, os);
        os << ")";
      }
      if (e.dflt()) {
        os << " (default ";
        render_sexpr(*e.dflt(), os);
        os << ")";
      }
      os << ")";
      return;
    }
  }
  throw InternalError("bad expr kind");
}

}  // namespace

std::string to_sexpr(const Expr& e) {
  std::ostringstream os;
  render_sexpr(e, os);
  return os.str();
}

Env Env::bind(VarId x, Val v) const {
  Env out;
  out.head_ = std::make_shared<const Node>(
      Node{std::move(x), std::move(v), head_});
  return out;
}

const Val* Env::lookup(const VarId& x) const {
  for (const Node* n = head_.get(); n != nullptr; n = n->parent.get())
    if (n->name == x) return &n->val;
  return nullptr;
}

TypeEnv TypeEnv::bind(VarId x, Type t) const {
  TypeEnv out;
  out.head_ = std::make_shared<const Node>(
      Node{std::move(x), std::move(t), head_});
  return out;
}

const Type* TypeEnv::lookup(const VarId& x) const {
  for (const Node* n = head_.get(); n != nullptr; n = n->parent.get())
    if (n->name == x) return &n->type;
  return nullptr;
}

}  // namespace alea
