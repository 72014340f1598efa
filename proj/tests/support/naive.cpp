#include "support/naive.hpp"

#include <optional>

#include "alea/builtins.hpp"
#include "alea/error.hpp"

namespace alea::testsupport {

namespace {

using Paths = std::vector<std::pair<Val, Rational>>;

Paths paths(const Env& env, const Expr& e);

// Exact mean of a path list; NaN as soon as any path value is NaN.
Val paths_mean(const Paths& ps) {
  Rational acc(0);
  for (const auto& [v, p] : ps) {
    if (v.kind() != ValKind::Num) throw InternalError("mean over non-number");
    if (v.num().is_nan()) return Val::nan();
    acc += p * v.num().rat();
  }
  return Val::num(Number(acc));
}

// Merges paths that reached the same value. Downstream stages see only the
// value, so this never changes the outcome, only the path count.
Paths collated(const Paths& raw) {
  std::map<Val, Rational, MetaLess> acc;
  for (const auto& [v, p] : raw) acc[v] += p;
  return Paths(acc.begin(), acc.end());
}

// Cartesian continuation: for every prefix path, every path of the next
// stage, probabilities multiplied.
template <typename F>
Paths forked(const Paths& prefixes, F&& next_stage) {
  Paths out;
  for (const auto& [v, p] : collated(prefixes)) {
    for (auto& [w, q] : next_stage(v)) out.emplace_back(std::move(w), p * q);
  }
  return collated(out);
}

Paths paths(const Env& env, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var: {
      const Val* v = env.lookup(e.var_name());
      if (!v) throw InternalError("unbound variable " + e.var_name());
      return {{*v, Rational(1)}};
    }
    case ExprKind::Const:
      return {{e.const_val(), Rational(1)}};
    case ExprKind::App:
      return forked(paths(env, e.arg()), [&](const Val& v) -> Paths {
        return {{apply_fun(e.fun(), v), Rational(1)}};
      });
    case ExprKind::Choose: {
      Paths out;
      for (const auto& [br, w] : e.branches()) {
        for (auto& [v, p] : paths(env, br)) out.emplace_back(std::move(v), w * p);
      }
      return out;
    }
    case ExprKind::Exp:
      return {{paths_mean(paths(env, e.inner())), Rational(1)}};
    case ExprKind::DistDraw:
      return forked(paths(env, e.bound()), [&](const Val& v) -> Paths {
        Dist pool = make_dist(e.dist_id(), v);
        Paths out;
        for (const auto& [x, q] : pool.pmf()) out.emplace_back(x, q);
        return out;
      });
    case ExprKind::Let:
      return forked(paths(env, e.bound()), [&](const Val& v) {
        return paths(env.bind(e.let_var(), v), e.body());
      });
    case ExprKind::NSwitch:
      return forked(paths(env, e.scrutinee()), [&](const Val& v) -> Paths {
        const Number& n = v.num();
        if (!n.is_nan()) {
          auto it = e.ncases().find(n.rat());
          if (it != e.ncases().end()) return paths(env, it->second);
        }
        if (e.dflt()) return paths(env, *e.dflt());
        throw InternalError("numeric switch fell through");
      });
    case ExprKind::Iter: {
      // Fold over the element instances, threading every partial
      // accumulator as its own path.
      return forked(paths(env, e.source()), [&](const Val& src) -> Paths {
        Paths accs = {{Val::empty_coll(e.iter_shape()), Rational(1)}};
        for (const Val& x : coll_instances(src)) {
          accs = forked(accs, [&](const Val& acc) {
            return forked(paths(env.bind(e.iter_var(), x), e.body()),
                          [&](const Val& piece) -> Paths {
                            return {{coll_concat(acc, piece), Rational(1)}};
                          });
          });
        }
        return accs;
      });
    }
    case ExprKind::Tuple: {
      Paths accs = {{Val::record({}), Rational(1)}};
      for (const auto& [id, fe] : e.tuple_fields()) {
        accs = forked(accs, [&](const Val& acc) {
          return forked(paths(env, fe), [&](const Val& fv) -> Paths {
            RecordVal r = acc.record();
            r.emplace(id, fv);
            return {{Val::record(std::move(r)), Rational(1)}};
          });
        });
      }
      return accs;
    }
    case ExprKind::Select:
      return forked(paths(env, e.inner()), [&](const Val& v) -> Paths {
        auto it = v.record().find(e.field());
        if (it == v.record().end()) throw InternalError("missing field");
        return {{it->second, Rational(1)}};
      });
    case ExprKind::Cons:
      return forked(paths(env, e.inner()), [&](const Val& v) -> Paths {
        return {{Val::tag(e.case_id(), v), Rational(1)}};
      });
    case ExprKind::CSwitch:
      return forked(paths(env, e.scrutinee()), [&](const Val& v) -> Paths {
        auto it = e.handlers().find(v.tag_case());
        if (it != e.handlers().end()) {
          return paths(env.bind(it->second.var, v.tag_payload()), it->second.body);
        }
        if (e.dflt()) return paths(env, *e.dflt());
        throw InternalError("case switch fell through");
      });
  }
  throw InternalError("unknown expression kind");
}

}  // namespace

Dist naive_dist(const Env& env, const Expr& e) { return Dist::from_weighted(paths(env, e)); }

}  // namespace alea::testsupport
