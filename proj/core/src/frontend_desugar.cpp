#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alea/ast.hpp"
#include "alea/builtins.hpp"
#include "alea/error.hpp"
#include "alea/frontend.hpp"
#include "alea/number.hpp"
#include "alea/value.hpp"
#include "surface.hpp"

namespace alea::surface {

namespace {

struct Ctx {
  std::vector<std::string> bound;  // lexically visible variables
  int fresh = 0;

  bool is_bound(const std::string& n) const {
    for (const std::string& b : bound) {
      if (b == n) return true;
    }
    return false;
  }
  // '$' cannot appear in source identifiers, so these never collide.
  std::string gensym() { return "$" + std::to_string(++fresh); }
};

Expr ds(const SP& sp, Ctx& ctx);

Expr pair_expr(Expr l, Expr r, SourcePos pos) {
  std::map<FieldId, Expr> f;
  f.emplace(FieldId::positional(1), std::move(l));
  f.emplace(FieldId::positional(2), std::move(r));
  return Expr::tuple(std::move(f), pos);
}

SP svar(const std::string& name, SourcePos pos) {
  auto n = std::make_shared<SExpr>();
  n->k = SExpr::K::Var;
  n->name = name;
  n->pos = pos;
  return n;
}

const char* coll_of_fun(Shape s) {
  switch (s) {
    case Shape::List: return "list_of";
    case Shape::Bag: return "bag_of";
    default: return "set_of";
  }
}

const char* convert_fun(Shape s) {
  switch (s) {
    case Shape::List: return "to_list";
    case Shape::Bag: return "to_bag";
    default: return "to_set";
  }
}

const char* range_fun(Shape s) {
  switch (s) {
    case Shape::List: return "range_list";
    case Shape::Bag: return "range_bag";
    default: return "range_set";
  }
}

Val empty_coll(Shape s) {
  std::vector<Val> none;
  return Val::coll_of(s, none);
}

bool is_const(const Expr& e) { return e.kind() == ExprKind::Const; }

// ---- comprehensions -----------------------------------------------------

// One single-binder stage of the comprehension pipeline, after generator
// chains have been transposed and wildcards freshened.
struct Step {
  bool gen = false;
  bool multi = false;              // draw a tuple without replacement
  std::vector<std::string> vars;
  SP source;
  SP filter;
  SourcePos pos;
};

Expr build_steps(const std::vector<Step>& steps, std::size_t i, const SP& map,
                 Shape s, Ctx& ctx) {
  if (i == steps.size()) {
    Expr m = ds(map, ctx);
    if (is_const(m)) {
      std::vector<Val> one{m.const_val()};
      return Expr::cnst(Val::coll_of(s, one), map->pos);
    }
    std::map<FieldId, Expr> f;
    f.emplace(FieldId::positional(1), std::move(m));
    return Expr::app(coll_of_fun(s), Expr::tuple(std::move(f), map->pos), map->pos);
  }
  const Step& st = steps[i];

  if (!st.gen) {
    Expr cond = ds(st.filter, ctx);
    Expr rest = build_steps(steps, i + 1, map, s, ctx);
    NCases cases;
    cases.emplace(Rational(1), std::move(rest));
    cases.emplace(Rational(0), Expr::cnst(empty_coll(s), st.pos));
    return Expr::nswitch(std::move(cond), std::move(cases), std::nullopt, st.pos);
  }

  if (!st.multi) {
    Expr src = Expr::app(convert_fun(s), ds(st.source, ctx), st.pos);
    ctx.bound.push_back(st.vars[0]);
    Expr rest = build_steps(steps, i + 1, map, s, ctx);
    ctx.bound.pop_back();
    return Expr::iter(std::move(src), st.vars[0], std::move(rest), s, st.pos);
  }

  // Draw a tuple of distinct instances. The source becomes a bag pool
  // bound once; the ordered draws form a bag of tuples (each inner pool
  // lacking what was already drawn), which feeds the rest of the pipeline
  // through destructuring lets.
  if (s == Shape::List) {
    throw ParseError("cannot draw without replacement into a list comprehension", st.pos);
  }
  const std::size_t nvars = st.vars.size();
  Expr pool_init = Expr::app(s == Shape::Bag ? "draw_pool_bag" : "draw_pool_set",
                             ds(st.source, ctx), st.pos);
  std::string pv = ctx.gensym();

  std::vector<Expr> pools;
  pools.push_back(Expr::var(pv, st.pos));
  for (std::size_t d = 1; d < nvars; ++d) {
    pools.push_back(Expr::app(
        "without", pair_expr(pools[d - 1], Expr::var(st.vars[d - 1], st.pos), st.pos),
        st.pos));
  }

  std::map<FieldId, Expr> tf;
  for (std::size_t d = 0; d < nvars; ++d) {
    tf.emplace(FieldId::positional(static_cast<std::uint32_t>(d + 1)),
               Expr::var(st.vars[d], st.pos));
  }
  std::map<FieldId, Expr> single;
  single.emplace(FieldId::positional(1), Expr::tuple(std::move(tf), st.pos));
  Expr draws = Expr::app("bag_of", Expr::tuple(std::move(single), st.pos), st.pos);
  for (std::size_t d = nvars; d-- > 0;) {
    draws = Expr::iter(pools[d], st.vars[d], std::move(draws), Shape::Bag, st.pos);
  }
  if (s == Shape::Set) draws = Expr::app("to_set", std::move(draws), st.pos);

  std::string tv = ctx.gensym();
  for (const std::string& v : st.vars) ctx.bound.push_back(v);
  Expr rest = build_steps(steps, i + 1, map, s, ctx);
  ctx.bound.resize(ctx.bound.size() - nvars);
  for (std::size_t d = nvars; d-- > 0;) {
    rest = Expr::let(
        Expr::select(Expr::var(tv, st.pos),
                     FieldId::positional(static_cast<std::uint32_t>(d + 1)), st.pos),
        st.vars[d], std::move(rest), st.pos);
  }
  return Expr::let(std::move(pool_init), pv,
                   Expr::iter(std::move(draws), tv, std::move(rest), s, st.pos), st.pos);
}

Expr compr_to_expr(const SExpr& e, Ctx& ctx) {
  std::vector<Step> steps;
  SP map = e.a;
  for (std::size_t ci = 0; ci < e.clauses.size(); ++ci) {
    const Clause& c = e.clauses[ci];
    if (!c.is_generator) {
      Step st;
      st.filter = c.filter;
      st.pos = c.pos;
      steps.push_back(std::move(st));
      continue;
    }
    // "p1 <- p2 <- ... <- src" iterates src's elements under pn first:
    // the chain transposes to "pn <- src; ...; p1 <- p2".
    const std::vector<Pattern>& pats = c.chain;
    std::vector<std::string> names(pats.size());
    for (std::size_t j = 0; j < pats.size(); ++j) {
      if (!pats[j].multi) {
        names[j] = pats[j].vars[0] == "_" ? ctx.gensym() : pats[j].vars[0];
      }
    }
    for (std::size_t j = pats.size(); j-- > 0;) {
      Step st;
      st.gen = true;
      st.pos = pats[j].pos;
      st.source = j + 1 < pats.size() ? svar(names[j + 1], pats[j].pos) : c.source;
      if (pats[j].multi) {
        st.multi = true;
        st.vars = pats[j].vars;
      } else {
        st.vars = {names[j]};
      }
      steps.push_back(std::move(st));
    }
    if (ci == 0 && !map) {
      // implicit map: what the first-written pattern binds
      if (pats[0].multi) {
        throw ParseError("a tuple pattern needs an explicit map clause", c.pos);
      }
      map = svar(names[0], pats[0].pos);
    }
  }
  return build_steps(steps, 0, map, e.shape, ctx);
}

// ---- switches ------------------------------------------------------------

Expr switch_to_expr(const SExpr& e, Ctx& ctx) {
  Expr scrut = ds(e.a, ctx);
  bool has_numeric = false;
  bool has_case = false;
  for (const SwitchItem& it : e.items) {
    if (it.is_default) continue;
    (it.case_id ? has_case : has_numeric) = true;
  }
  if (has_numeric && has_case) {
    throw ParseError("a switch cannot mix numeric keys and case patterns", e.pos);
  }

  std::optional<Expr> dflt;
  if (has_case) {
    std::map<CaseId, CHandler> handlers;
    for (const SwitchItem& it : e.items) {
      if (it.is_default) {
        if (dflt) throw ParseError("duplicate default arm", it.pos);
        dflt = ds(it.body, ctx);
        continue;
      }
      std::string var =
          it.payload && *it.payload != "_" ? *it.payload : ctx.gensym();
      ctx.bound.push_back(var);
      Expr body = ds(it.body, ctx);
      ctx.bound.pop_back();
      if (!handlers.emplace(*it.case_id, CHandler{var, std::move(body)}).second) {
        throw ParseError("duplicate case @" + *it.case_id, it.pos);
      }
    }
    return Expr::cswitch(std::move(scrut), std::move(handlers), std::move(dflt), e.pos);
  }

  NCases cases;
  for (const SwitchItem& it : e.items) {
    if (it.is_default) {
      if (dflt) throw ParseError("duplicate default arm", it.pos);
      dflt = ds(it.body, ctx);
      continue;
    }
    Expr body = ds(it.body, ctx);
    for (const Rational& key : it.keys) {
      if (!cases.emplace(key, body).second) {
        throw ParseError("duplicate switch key", it.pos);
      }
    }
  }
  return Expr::nswitch(std::move(scrut), std::move(cases), std::move(dflt), e.pos);
}

// ---- main recursion -------------------------------------------------------

Expr ds(const SP& sp, Ctx& ctx) {
  const SExpr& e = *sp;
  switch (e.k) {
    case SExpr::K::Num:
      return Expr::cnst(Val::num(Number(e.num)), e.pos);

    case SExpr::K::Var:
      if (e.name == "E") {
        throw ParseError("E is reserved for expectations", e.pos);
      }
      return Expr::var(e.name, e.pos);

    case SExpr::K::QuotedOp:
      throw ParseError("a quoted operator must be applied to a collection", e.pos);

    case SExpr::K::Call: {
      if (e.name == "E") return Expr::expect(ds(e.a, ctx), e.pos);
      if (ctx.is_bound(e.name)) {
        throw ParseError(e.name + " is a variable here, not a function", e.pos);
      }
      if (!fun_exists(e.name) || !fun_is_surface(e.name)) {
        throw ParseError("unknown function " + e.name, e.pos);
      }
      return Expr::app(e.name, ds(e.a, ctx), e.pos);
    }

    case SExpr::K::Draw: {
      if (!dist_exists(e.name)) {
        throw ParseError("unknown distribution " + e.name, e.pos);
      }
      return Expr::dist_draw(e.name, ds(e.a, ctx), e.pos);
    }

    case SExpr::K::Choose: {
      std::vector<std::pair<Expr, Rational>> branches;
      branches.reserve(e.weighted.size());
      for (const auto& [w, b] : e.weighted) branches.emplace_back(ds(b, ctx), w);
      return Expr::choose(std::move(branches), e.pos);
    }

    case SExpr::K::Unary: {
      Expr a = ds(e.a, ctx);
      if (e.name == "not") return Expr::app("not", std::move(a), e.pos);
      if (is_const(a) && a.const_val().kind() == ValKind::Num &&
          !a.const_val().num().is_nan()) {
        return Expr::cnst(Val::num(Number(Rational(-a.const_val().num().rat()))), e.pos);
      }
      return Expr::app(
          "-", pair_expr(Expr::cnst(Val::num(Number(0)), e.pos), std::move(a), e.pos),
          e.pos);
    }

    case SExpr::K::Binary:
      return Expr::app(e.name, pair_expr(ds(e.a, ctx), ds(e.b, ctx), e.pos), e.pos);

    case SExpr::K::Ternary: {
      NCases cases;
      cases.emplace(Rational(1), ds(e.b, ctx));
      cases.emplace(Rational(0), ds(e.c, ctx));
      return Expr::nswitch(ds(e.a, ctx), std::move(cases), std::nullopt, e.pos);
    }

    case SExpr::K::Switch:
      return switch_to_expr(e, ctx);

    case SExpr::K::Display: {
      std::vector<Expr> elems;
      elems.reserve(e.elems.size());
      bool all_const = true;
      for (const SP& c : e.elems) {
        elems.push_back(ds(c, ctx));
        all_const = all_const && is_const(elems.back());
      }
      if (all_const) {
        std::vector<Val> vals;
        vals.reserve(elems.size());
        for (const Expr& x : elems) vals.push_back(x.const_val());
        return Expr::cnst(Val::coll_of(e.shape, vals), e.pos);
      }
      std::map<FieldId, Expr> f;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        f.emplace(FieldId::positional(static_cast<std::uint32_t>(i + 1)),
                  std::move(elems[i]));
      }
      return Expr::app(coll_of_fun(e.shape), Expr::tuple(std::move(f), e.pos), e.pos);
    }

    case SExpr::K::Range: {
      Expr lo = ds(e.a, ctx);
      Expr hi = ds(e.b, ctx);
      const char* fun = range_fun(e.shape);
      const auto int_const = [](const Expr& x) {
        return is_const(x) && x.const_val().kind() == ValKind::Num &&
               !x.const_val().num().is_nan() &&
               x.const_val().num().rat().get_den() == 1;
      };
      if (int_const(lo) && int_const(hi)) {
        RecordVal r;
        r.emplace(FieldId::positional(1), lo.const_val());
        r.emplace(FieldId::positional(2), hi.const_val());
        try {
          return Expr::cnst(apply_fun(fun, Val::record(std::move(r))), e.pos);
        } catch (const EvalError&) {
          // out-of-bounds width: leave it to evaluation to report
        }
      }
      return Expr::app(fun, pair_expr(std::move(lo), std::move(hi), e.pos), e.pos);
    }

    case SExpr::K::Compr:
      return compr_to_expr(e, ctx);

    case SExpr::K::Tuple: {
      std::map<FieldId, Expr> f;
      std::uint32_t next_index = 0;
      bool all_const = true;
      for (const auto& [name, child] : e.fields) {
        Expr c = ds(child, ctx);
        all_const = all_const && is_const(c);
        FieldId id =
            name.empty() ? FieldId::positional(++next_index) : FieldId::named(name);
        if (!f.emplace(std::move(id), std::move(c)).second) {
          throw ParseError("duplicate field " + (name.empty() ? "" : name), e.pos);
        }
      }
      if (all_const) {
        RecordVal r;
        for (const auto& [id, c] : f) r.emplace(id, c.const_val());
        return Expr::cnst(Val::record(std::move(r)), e.pos);
      }
      return Expr::tuple(std::move(f), e.pos);
    }

    case SExpr::K::Select:
      return Expr::select(ds(e.a, ctx),
                          e.positional_sel ? FieldId::positional(e.index)
                                           : FieldId::named(e.name),
                          e.pos);

    case SExpr::K::Tag: {
      Expr payload = e.a ? ds(e.a, ctx) : Expr::cnst(Val::record(RecordVal{}), e.pos);
      if (is_const(payload)) {
        return Expr::cnst(Val::tag(e.name, payload.const_val()), e.pos);
      }
      return Expr::cons(e.name, std::move(payload), e.pos);
    }

    case SExpr::K::Block: {
      std::vector<std::pair<std::string, Expr>> binds;
      binds.reserve(e.fields.size());
      for (const auto& [name, rhs] : e.fields) {
        binds.emplace_back(name, ds(rhs, ctx));
        ctx.bound.push_back(name);
      }
      Expr result = e.a ? ds(e.a, ctx) : Expr::var(e.fields.back().first, e.pos);
      ctx.bound.resize(ctx.bound.size() - e.fields.size());
      for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
        result = Expr::let(std::move(it->second), it->first, std::move(result), e.pos);
      }
      return result;
    }
  }
  throw InternalError("unhandled surface node");
}

}  // namespace

Expr desugar(const SP& program) {
  Ctx ctx;
  return ds(program, ctx);
}

}  // namespace alea::surface

namespace alea {

Expr parse_program(const std::string& src) {
  std::vector<Token> toks = lex(src);
  surface::SP prog = surface::parse_surface(toks);
  return surface::desugar(prog);
}

}  // namespace alea
