#include <utility>
#include <vector>

#include "alea/builtins.hpp"
#include "alea/engine.hpp"
#include "alea/error.hpp"

namespace alea {
namespace {

const Type& rat_type() {
  static const Type t = Type::num(NumKind::Rat);
  return t;
}
const Type& bool_type() {
  static const Type t = Type::boolean();
  return t;
}

// Result of checking one node: its type, plus the rewritten node when
// elaboration changed something below.
struct InferRes {
  Type type;
  std::optional<Expr> rw;
};

Expr pick(const std::optional<Expr>& rw, const Expr& orig) { return rw ? *rw : orig; }

InferRes infer_rec(const TypeEnv& env, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var: {
      const Type* t = env.lookup(e.var_name());
      if (!t) throw TypeError("unbound variable " + e.var_name(), e.pos());
      return {*t, std::nullopt};
    }

    case ExprKind::Const:
      return {e.const_type(), std::nullopt};

    case ExprKind::App: {
      InferRes a = infer_rec(env, e.arg());
      Type out = resolve_fun(e.fun(), a.type, e.pos());
      std::optional<FunId> sp = specialize_fold(e.fun(), a.type);
      if (sp && *sp == e.fun()) sp.reset();
      if (sp || a.rw) {
        return {out, Expr::app(sp ? *sp : e.fun(), pick(a.rw, e.arg()), e.pos())};
      }
      return {out, std::nullopt};
    }

    case ExprKind::Choose: {
      Type out = Type::none();
      bool changed = false;
      std::vector<std::pair<Expr, Rational>> branches;
      branches.reserve(e.branches().size());
      for (const auto& [br, w] : e.branches()) {
        InferRes r = infer_rec(env, br);
        out = join(out, r.type);
        changed = changed || r.rw.has_value();
        branches.emplace_back(pick(r.rw, br), w);
      }
      if (changed) return {out, Expr::choose(std::move(branches), e.pos())};
      return {out, std::nullopt};
    }

    case ExprKind::Exp: {
      InferRes r = infer_rec(env, e.inner());
      if (!subtype(r.type, rat_type())) {
        throw TypeError("expectation over non-numeric type " + to_string(r.type), e.pos());
      }
      if (r.rw) return {rat_type(), Expr::expect(*r.rw, e.pos())};
      return {rat_type(), std::nullopt};
    }

    case ExprKind::DistDraw: {
      InferRes p = infer_rec(env, e.bound());
      Type out = resolve_dist(e.dist_id(), p.type, e.pos());
      if (p.rw) return {out, Expr::dist_draw(e.dist_id(), *p.rw, e.pos())};
      return {out, std::nullopt};
    }

    case ExprKind::Let: {
      InferRes b = infer_rec(env, e.bound());
      InferRes r = infer_rec(env.bind(e.let_var(), b.type), e.body());
      if (b.rw || r.rw) {
        return {r.type,
                Expr::let(pick(b.rw, e.bound()), e.let_var(), pick(r.rw, e.body()), e.pos())};
      }
      return {r.type, std::nullopt};
    }

    case ExprKind::NSwitch: {
      InferRes s = infer_rec(env, e.scrutinee());
      if (!subtype(s.type, rat_type())) {
        throw TypeError("switching on non-numeric type " + to_string(s.type), e.pos());
      }
      // Keys 0 and 1 over a boolean scrutinee cover everything; otherwise
      // a numeric domain is never exhausted by finitely many keys.
      bool bool_covered = subtype(s.type, bool_type()) && e.ncases().count(Rational(0)) > 0 &&
                          e.ncases().count(Rational(1)) > 0;
      if (!bool_covered && !e.dflt() && !type_empty(s.type)) {
        throw TypeError("switch without default may miss values of type " + to_string(s.type),
                        e.pos());
      }
      Type out = Type::none();
      bool changed = s.rw.has_value();
      NCases cases;
      for (const auto& [k, br] : e.ncases()) {
        InferRes r = infer_rec(env, br);
        // Branches whose key no value of the scrutinee type can take are
        // checked but contribute nothing to the result type.
        if (inhabits(Val::num(Number(k)), s.type)) out = join(out, r.type);
        changed = changed || r.rw.has_value();
        cases.emplace(k, pick(r.rw, br));
      }
      std::optional<Expr> dflt;
      if (e.dflt()) {
        InferRes r = infer_rec(env, *e.dflt());
        if (!bool_covered) out = join(out, r.type);
        changed = changed || r.rw.has_value();
        dflt = pick(r.rw, *e.dflt());
      }
      if (changed) {
        return {out, Expr::nswitch(pick(s.rw, e.scrutinee()), std::move(cases), std::move(dflt),
                                   e.pos())};
      }
      return {out, std::nullopt};
    }

    case ExprKind::Iter: {
      InferRes s = infer_rec(env, e.source());
      if (s.type.kind() != TypeKind::Coll) {
        throw TypeError("iterating over non-collection type " + to_string(s.type), e.pos());
      }
      if (s.type.shape() != e.iter_shape()) {
        throw TypeError("iteration source is a " + to_string(s.type.shape()) +
                            ", result shape is " + to_string(e.iter_shape()),
                        e.pos());
      }
      InferRes b = infer_rec(env.bind(e.iter_var(), s.type.elem()), e.body());
      if (b.type.kind() != TypeKind::Coll || b.type.shape() != e.iter_shape()) {
        throw TypeError("iteration body must yield a " + to_string(e.iter_shape()) +
                            ", found " + to_string(b.type),
                        e.pos());
      }
      Mode m = (s.type.mode() == Mode::Pos && b.type.mode() == Mode::Pos) ? Mode::Pos : Mode::Opt;
      Type out = Type::coll(e.iter_shape(), m, b.type.elem());
      if (s.rw || b.rw) {
        return {out, Expr::iter(pick(s.rw, e.source()), e.iter_var(), pick(b.rw, e.body()),
                                e.iter_shape(), e.pos())};
      }
      return {out, std::nullopt};
    }

    case ExprKind::Tuple: {
      FieldTypes fts;
      bool changed = false;
      std::map<FieldId, Expr> fields;
      for (const auto& [id, fe] : e.tuple_fields()) {
        InferRes r = infer_rec(env, fe);
        fts.emplace(id, r.type);
        changed = changed || r.rw.has_value();
        fields.emplace(id, pick(r.rw, fe));
      }
      Type out = Type::prod(std::move(fts));
      if (changed) return {out, Expr::tuple(std::move(fields), e.pos())};
      return {out, std::nullopt};
    }

    case ExprKind::Select: {
      InferRes b = infer_rec(env, e.inner());
      if (b.type.kind() != TypeKind::Prod) {
        throw TypeError("selecting from non-record type " + to_string(b.type), e.pos());
      }
      auto it = b.type.fields().find(e.field());
      if (it == b.type.fields().end()) {
        throw TypeError("no field " + to_string(e.field()) + " in " + to_string(b.type), e.pos());
      }
      if (b.rw) return {it->second, Expr::select(*b.rw, e.field(), e.pos())};
      return {it->second, std::nullopt};
    }

    case ExprKind::Cons: {
      InferRes p = infer_rec(env, e.inner());
      CaseTypes cs;
      cs.emplace(e.case_id(), p.type);
      Type out = Type::sum(std::move(cs));
      if (p.rw) return {out, Expr::cons(e.case_id(), *p.rw, e.pos())};
      return {out, std::nullopt};
    }

    case ExprKind::CSwitch: {
      InferRes s = infer_rec(env, e.scrutinee());
      if (s.type.kind() != TypeKind::Sum) {
        throw TypeError("case switch on non-tagged type " + to_string(s.type), e.pos());
      }
      const CaseTypes& cases = s.type.cases();
      std::size_t unhandled = cases.size();
      for (const auto& [c, h] : e.handlers()) {
        (void)h;
        if (cases.count(c) == 0) {
          throw TypeError("handler for case @" + c + " not in " + to_string(s.type), e.pos());
        }
        --unhandled;
      }
      if (unhandled > 0 && !e.dflt()) {
        for (const auto& [c, t] : cases) {
          (void)t;
          if (e.handlers().count(c) == 0) {
            throw TypeError("switch misses case @" + c, e.pos());
          }
        }
      }
      Type out = Type::none();
      bool changed = s.rw.has_value();
      std::map<CaseId, CHandler> handlers;
      for (const auto& [c, h] : e.handlers()) {
        InferRes r = infer_rec(env.bind(h.var, cases.at(c)), h.body);
        out = join(out, r.type);
        changed = changed || r.rw.has_value();
        handlers.emplace(c, CHandler{h.var, pick(r.rw, h.body)});
      }
      std::optional<Expr> dflt;
      if (e.dflt()) {
        InferRes r = infer_rec(env, *e.dflt());
        if (unhandled > 0) out = join(out, r.type);
        changed = changed || r.rw.has_value();
        dflt = pick(r.rw, *e.dflt());
      }
      if (changed) {
        return {out, Expr::cswitch(pick(s.rw, e.scrutinee()), std::move(handlers),
                                   std::move(dflt), e.pos())};
      }
      return {out, std::nullopt};
    }
  }
  throw InternalError("unhandled expression kind");
}

}  // namespace

Type infer(const TypeEnv& env, const Expr& e) { return infer_rec(env, e).type; }

Typed elaborate(const TypeEnv& env, const Expr& e) {
  InferRes r = infer_rec(env, e);
  return {pick(r.rw, e), r.type};
}

Typed infer_program(const Expr& e) {
  Typed t = elaborate(TypeEnv{}, e);
  if (type_empty(t.type)) {
    throw TypeError("program type " + to_string(t.type) + " has no values", e.pos());
  }
  return t;
}

}  // namespace alea
