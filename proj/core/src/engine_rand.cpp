#include <iterator>
#include <vector>

#include "alea/builtins.hpp"
#include "alea/engine.hpp"
#include "alea/error.hpp"
#include "engine_internal.hpp"

namespace alea {

std::uint64_t rng_next(RngState& st) {
  // splitmix64: one additive step of the state, then a mixing function.
  st.word += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = st.word;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::size_t random_index(RngState& st, const std::vector<Rational>& probs) {
  if (probs.empty()) throw InternalError("draw from an empty distribution");
  if (probs.size() == 1) return 0;
  // Scale to integer weights over the common denominator L, then draw a
  // uniform integer below L by multi-word rejection sampling: sample
  // ceil(bits(L) / 64) words big-endian first, reject at the largest
  // multiple of L below the word range, reduce, and walk the cumulative
  // weights.
  mpz_class l(1);
  for (const Rational& p : probs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_den().get_mpz_t());
  std::size_t words = (mpz_sizeinbase(l.get_mpz_t(), 2) + 63) / 64;
  mpz_class range(1);
  range <<= 64 * words;
  mpz_class limit = (range / l) * l;
  mpz_class r;
  do {
    r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      r <<= 64;
      r += mpz_class(static_cast<unsigned long>(rng_next(st)));
    }
  } while (r >= limit);
  mpz_class u = r % l;
  mpz_class acc(0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    Rational w = probs[i] * Rational(l);
    if (w.get_den() != 1) throw InternalError("weight scaling not integral");
    acc += w.get_num();
    if (u < acc) return i;
  }
  throw InternalError("probabilities sum below 1");
}

namespace {

const Val& dist_pick(const Dist& d, RngState& st) {
  if (d.support_size() == 1) return d.pmf().begin()->first;
  std::vector<Rational> probs;
  probs.reserve(d.support_size());
  for (const auto& [v, p] : d.pmf()) probs.push_back(p);
  std::size_t idx = random_index(st, probs);
  auto it = d.pmf().begin();
  std::advance(it, idx);
  return it->first;
}

}  // namespace

Val eval_rand(const Env& env, const Expr& e, RngState& st) {
  switch (e.kind()) {
    case ExprKind::Var: {
      const Val* v = env.lookup(e.var_name());
      if (!v) throw InternalError("unbound variable " + e.var_name());
      return *v;
    }
    case ExprKind::Const:
      return e.const_val();
    case ExprKind::App:
      return apply_fun(e.fun(), eval_rand(env, e.arg(), st));
    case ExprKind::Choose: {
      const auto& branches = e.branches();
      std::size_t idx = 0;
      if (branches.size() > 1) {
        std::vector<Rational> probs;
        probs.reserve(branches.size());
        for (const auto& [br, w] : branches) probs.push_back(w);
        idx = random_index(st, probs);
      }
      return eval_rand(env, branches[idx].first, st);
    }
    case ExprKind::Exp:
      // The inner distribution is computed exactly; no randomness is used.
      return Val::num(dmean(eval_dist(env, e.inner())));
    case ExprKind::DistDraw: {
      Val param = eval_rand(env, e.bound(), st);
      Dist d = make_dist(e.dist_id(), param);
      return dist_pick(d, st);
    }
    case ExprKind::Let: {
      Val v = eval_rand(env, e.bound(), st);
      return eval_rand(env.bind(e.let_var(), v), e.body(), st);
    }
    case ExprKind::NSwitch: {
      Val s = eval_rand(env, e.scrutinee(), st);
      const Expr* br = detail::nswitch_branch(e, s.num());
      if (!br) throw InternalError("numeric switch fell through");
      return eval_rand(env, *br, st);
    }
    case ExprKind::Iter: {
      Val src = eval_rand(env, e.source(), st);
      Val acc = Val::empty_coll(e.iter_shape());
      for (const Val& x : coll_instances(src)) {
        acc = coll_concat(acc, eval_rand(env.bind(e.iter_var(), x), e.body(), st));
      }
      return acc;
    }
    case ExprKind::Tuple: {
      RecordVal r;
      for (const auto& [id, fe] : e.tuple_fields()) r.emplace(id, eval_rand(env, fe, st));
      return Val::record(std::move(r));
    }
    case ExprKind::Select: {
      Val base = eval_rand(env, e.inner(), st);
      auto it = base.record().find(e.field());
      if (it == base.record().end()) throw InternalError("missing record field");
      return it->second;
    }
    case ExprKind::Cons:
      return Val::tag(e.case_id(), eval_rand(env, e.inner(), st));
    case ExprKind::CSwitch: {
      Val s = eval_rand(env, e.scrutinee(), st);
      detail::CaseSel sel = detail::cswitch_select(e, s.tag_case());
      if (sel.handler) {
        return eval_rand(env.bind(sel.handler->var, s.tag_payload()), sel.handler->body, st);
      }
      if (sel.dflt) return eval_rand(env, *sel.dflt, st);
      throw InternalError("case switch fell through");
    }
  }
  throw InternalError("unhandled expression kind");
}

}  // namespace alea
