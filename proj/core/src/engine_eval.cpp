#include <utility>
#include <vector>

#include "alea/builtins.hpp"
#include "alea/engine.hpp"
#include "alea/error.hpp"
#include "engine_internal.hpp"

namespace alea {

namespace detail {

const Expr* nswitch_branch(const Expr& sw, const Number& n) {
  if (!n.is_nan()) {
    auto it = sw.ncases().find(n.rat());
    if (it != sw.ncases().end()) return &it->second;
  }
  if (sw.dflt()) return &*sw.dflt();
  return nullptr;
}

CaseSel cswitch_select(const Expr& sw, const CaseId& c) {
  CaseSel sel;
  auto it = sw.handlers().find(c);
  if (it != sw.handlers().end()) {
    sel.handler = &it->second;
  } else if (sw.dflt()) {
    sel.dflt = &*sw.dflt();
  }
  return sel;
}

}  // namespace detail

Val eval_det(const Env& env, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var: {
      const Val* v = env.lookup(e.var_name());
      if (!v) throw InternalError("unbound variable " + e.var_name());
      return *v;
    }
    case ExprKind::Const:
      return e.const_val();
    case ExprKind::App:
      return apply_fun(e.fun(), eval_det(env, e.arg()));
    case ExprKind::Let: {
      Val v = eval_det(env, e.bound());
      return eval_det(env.bind(e.let_var(), v), e.body());
    }
    case ExprKind::NSwitch: {
      Val s = eval_det(env, e.scrutinee());
      const Expr* br = detail::nswitch_branch(e, s.num());
      if (!br) throw InternalError("numeric switch fell through");
      return eval_det(env, *br);
    }
    case ExprKind::Iter: {
      Val src = eval_det(env, e.source());
      Val acc = Val::empty_coll(e.iter_shape());
      for (const Val& x : coll_instances(src)) {
        acc = coll_concat(acc, eval_det(env.bind(e.iter_var(), x), e.body()));
      }
      return acc;
    }
    case ExprKind::Tuple: {
      RecordVal r;
      for (const auto& [id, fe] : e.tuple_fields()) r.emplace(id, eval_det(env, fe));
      return Val::record(std::move(r));
    }
    case ExprKind::Select: {
      Val base = eval_det(env, e.inner());
      auto it = base.record().find(e.field());
      if (it == base.record().end()) throw InternalError("missing record field");
      return it->second;
    }
    case ExprKind::Cons:
      return Val::tag(e.case_id(), eval_det(env, e.inner()));
    case ExprKind::CSwitch: {
      Val s = eval_det(env, e.scrutinee());
      detail::CaseSel sel = detail::cswitch_select(e, s.tag_case());
      if (sel.handler) {
        return eval_det(env.bind(sel.handler->var, s.tag_payload()), sel.handler->body);
      }
      if (sel.dflt) return eval_det(env, *sel.dflt);
      throw InternalError("case switch fell through");
    }
    case ExprKind::Choose:
    case ExprKind::Exp:
    case ExprKind::DistDraw:
      break;
  }
  throw InternalError("deterministic evaluation of a stochastic node");
}

namespace {

// Distribution of one iteration: the concatenation of one independent
// draw of the body per source element. Elements whose bodies have the
// same distribution are batched into repeated-squaring powers when the
// order is irrelevant (bags and sets).
Dist iter_dist(const Env& env, const Expr& e, const Val& src, const EvalOptions& opts) {
  Shape sh = e.iter_shape();
  Dist acc = Dist::delta(Val::empty_coll(sh));
  if (coll_size(src) == 0) return acc;
  if (sh != Shape::List && opts.iid_pow) {
    std::vector<std::pair<Dist, std::uint64_t>> groups;
    auto feed = [&](const Val& key, std::uint64_t m) {
      Dist d = eval_dist(env.bind(e.iter_var(), key), e.body(), opts);
      for (auto& g : groups) {
        if (g.first == d) {
          g.second += m;
          return;
        }
      }
      groups.emplace_back(std::move(d), m);
    };
    if (src.kind() == ValKind::Bag) {
      for (const auto& [k, m] : src.bag()) feed(k, m);
    } else {
      for (const Val& k : src.set()) feed(k, 1);
    }
    for (const auto& [d, m] : groups) acc = dconv(acc, dpow_iid(d, m, coll_concat), coll_concat);
    return acc;
  }
  for (const Val& x : coll_instances(src)) {
    acc = dconv(acc, eval_dist(env.bind(e.iter_var(), x), e.body(), opts), coll_concat);
  }
  return acc;
}

}  // namespace

Dist eval_dist(const Env& env, const Expr& e, const EvalOptions& opts) {
  if (opts.det_fastpath && e.s_deterministic()) return Dist::delta(eval_det(env, e));
  switch (e.kind()) {
    case ExprKind::Var: {
      const Val* v = env.lookup(e.var_name());
      if (!v) throw InternalError("unbound variable " + e.var_name());
      return Dist::delta(*v);
    }
    case ExprKind::Const:
      return Dist::delta(e.const_val());
    case ExprKind::App: {
      Dist d = eval_dist(env, e.arg(), opts);
      return dmap(d, [&](const Val& v) { return apply_fun(e.fun(), v); });
    }
    case ExprKind::Choose: {
      std::vector<std::pair<Dist, Rational>> parts;
      parts.reserve(e.branches().size());
      for (const auto& [br, w] : e.branches()) parts.emplace_back(eval_dist(env, br, opts), w);
      return dmult(parts);
    }
    case ExprKind::Exp:
      return Dist::delta(Val::num(dmean(eval_dist(env, e.inner(), opts))));
    case ExprKind::DistDraw: {
      Dist p = eval_dist(env, e.bound(), opts);
      std::vector<std::pair<Dist, Rational>> parts;
      parts.reserve(p.pmf().size());
      for (const auto& [v, w] : p.pmf()) parts.emplace_back(make_dist(e.dist_id(), v), w);
      return dmult(parts);
    }
    case ExprKind::Let: {
      Dist b = eval_dist(env, e.bound(), opts);
      std::vector<std::pair<Dist, Rational>> parts;
      parts.reserve(b.pmf().size());
      for (const auto& [v, w] : b.pmf()) {
        parts.emplace_back(eval_dist(env.bind(e.let_var(), v), e.body(), opts), w);
      }
      return dmult(parts);
    }
    case ExprKind::NSwitch: {
      Dist s = eval_dist(env, e.scrutinee(), opts);
      // Pool the scrutinee mass per branch so each branch is evaluated
      // once, however many scrutinee values select it.
      std::vector<std::pair<const Expr*, Rational>> pooled;
      for (const auto& [v, w] : s.pmf()) {
        const Expr* br = detail::nswitch_branch(e, v.num());
        if (!br) throw InternalError("numeric switch fell through");
        bool found = false;
        for (auto& p : pooled) {
          if (p.first == br) {
            p.second += w;
            found = true;
            break;
          }
        }
        if (!found) pooled.emplace_back(br, w);
      }
      std::vector<std::pair<Dist, Rational>> parts;
      parts.reserve(pooled.size());
      for (const auto& [br, w] : pooled) parts.emplace_back(eval_dist(env, *br, opts), w);
      return dmult(parts);
    }
    case ExprKind::Iter: {
      Dist src = eval_dist(env, e.source(), opts);
      std::vector<std::pair<Dist, Rational>> parts;
      parts.reserve(src.pmf().size());
      for (const auto& [v, w] : src.pmf()) parts.emplace_back(iter_dist(env, e, v, opts), w);
      return dmult(parts);
    }
    case ExprKind::Tuple: {
      Dist acc = Dist::delta(Val::unit());
      for (const auto& [id, fe] : e.tuple_fields()) {
        Dist f = eval_dist(env, fe, opts);
        const FieldId& fid = id;
        acc = dconv(acc, f, [&fid](const Val& r, const Val& x) {
          RecordVal m = r.record();
          m.emplace(fid, x);
          return Val::record(std::move(m));
        });
      }
      return acc;
    }
    case ExprKind::Select: {
      Dist base = eval_dist(env, e.inner(), opts);
      return dmap(base, [&](const Val& v) {
        auto it = v.record().find(e.field());
        if (it == v.record().end()) throw InternalError("missing record field");
        return it->second;
      });
    }
    case ExprKind::Cons: {
      Dist p = eval_dist(env, e.inner(), opts);
      return dmap(p, [&](const Val& v) { return Val::tag(e.case_id(), v); });
    }
    case ExprKind::CSwitch: {
      Dist s = eval_dist(env, e.scrutinee(), opts);
      std::vector<std::pair<Dist, Rational>> parts;
      Rational dflt_mass = 0;
      for (const auto& [v, w] : s.pmf()) {
        detail::CaseSel sel = detail::cswitch_select(e, v.tag_case());
        if (sel.handler) {
          parts.emplace_back(
              eval_dist(env.bind(sel.handler->var, v.tag_payload()), sel.handler->body, opts), w);
        } else if (sel.dflt) {
          dflt_mass += w;
        } else {
          throw InternalError("case switch fell through");
        }
      }
      if (dflt_mass > 0) parts.emplace_back(eval_dist(env, *e.dflt(), opts), dflt_mass);
      return dmult(parts);
    }
  }
  throw InternalError("unhandled expression kind");
}

}  // namespace alea
