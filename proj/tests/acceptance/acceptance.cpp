// Release gate: one check per shipped claim, one PASS/FAIL line each.
// Exits nonzero if anything fails. Budgeted checks time themselves.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alea/builtins.hpp"
#include "alea/engine.hpp"
#include "alea/frontend.hpp"
#include "alea/text.hpp"
#include "support/chi.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"

using namespace alea;
using alea::testsupport::Gen;
using alea::testsupport::GenOptions;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Typed load_fixture(const std::string& name) {
  return infer_program(parse_program(slurp(std::filesystem::path(ALEA_FIXTURES_DIR) / name)));
}

Val run_closed(const std::string& src) {
  Typed t = infer_program(parse_program(src));
  return eval_det(Env{}, t.expr);
}

Rational exact_rational(const char* num, const char* den) {
  Rational r(mpz_class(num), mpz_class(den));
  r.canonicalize();
  return r;
}

// Probability mass carried by @win cases of any payload.
Rational win_mass(const Dist& d) {
  Rational sum(0);
  for (const auto& [v, p] : d.pmf()) {
    if (v.kind() == ValKind::Tag && v.tag_case() == "win") sum += p;
  }
  return sum;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---- criterion bodies ----------------------------------------------------

bool storyteller_win_mass(std::string& note) {
  auto t0 = std::chrono::steady_clock::now();
  Typed t = load_fixture("storyteller.alea");
  Rational w = win_mass(eval_dist(Env{}, t.expr));
  double secs = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1fs, budget 120s)", secs);
  note += render_decimal(w) + buf;
  return w == exact_rational("90661502737169", "100000000000000") && secs <= 120.0;
}

bool storyteller_variant_decimal(std::string& note) {
  Typed t = load_fixture("storyteller_fumble_original.alea");
  Rational w = win_mass(eval_dist(Env{}, t.expr));
  std::string dec = render_decimal(w);
  note += dec;
  // The expansion terminates at exactly the eight quoted digits; a longer
  // or approximate rendering here means the frozen value drifted.
  return dec == "0.91182365" && w == exact_rational("18236473", "20000000");
}

bool three_of_a_kind_expectation(std::string& note) {
  auto t0 = std::chrono::steady_clock::now();
  Typed t = load_fixture("yahtzee_three_kind.alea");
  Dist d = eval_dist(Env{}, t.expr);
  double secs = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2fs, budget 10s)", secs);
  note += render_dist_records(d).substr(0, render_dist_records(d).find('\n')) + buf;
  return d == Dist::delta(Val::num(Number(exact_rational("17", "144")))) && secs <= 10.0;
}

bool coin_distribution(std::string& note) {
  Typed t = load_fixture("coin.alea");
  Dist d = eval_dist(Env{}, t.expr);
  Dist want = Dist::from_weighted({{Val::tag("head", Val::unit()), exact_rational("503", "1000")},
                                   {Val::tag("ship", Val::unit()), exact_rational("497", "1000")}});
  note += render_dist_records(d);
  note.pop_back();
  std::replace(note.begin(), note.end(), '\n', ' ');
  std::replace(note.begin(), note.end(), '\t', ':');
  return d == want;
}

bool containment_table(std::string& note) {
  struct Row {
    const char* src;
    bool want;
  };
  const Row rows[] = {
      {"{2, 3} < {1, 2, 3, 0/0}", true},
      {"{0/0} = {0/0}", false},
      {"[2, 3] < [1, 2, 3, 4]", true},
      {"[1, 4] < [1, 2, 3, 4]", false},
  };
  bool ok = true;
  for (const Row& r : rows) {
    Val got = run_closed(r.src);
    bool b = meta_equal(got, Val::boolean(true));
    if (b != r.want) {
      ok = false;
      note += std::string(" [") + r.src + " gave " + render_val(got) + "]";
    }
  }
  if (ok) note += "4/4 rows";
  return ok;
}

bool deterministic_point_masses(std::string& note) {
  Gen gen(1270001);
  GenOptions opt;
  opt.stochastic = false;
  opt.max_depth = 5;
  const EvalOptions plain{false, false};
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    auto [raw, claimed] = gen.expr(opt);
    Expr e = elaborate(TypeEnv{}, raw).expr;
    Val v = eval_det(Env{}, e);
    Dist want = Dist::delta(v);
    if (!(eval_dist(Env{}, e) == want) || !(eval_dist(Env{}, e, plain) == want)) ++bad;
  }
  note += "1000 programs, " + std::to_string(bad) + " violations";
  return bad == 0;
}

bool results_inhabit_types(std::string& note) {
  int bad = 0;

  Gen det_gen(884422);
  GenOptions det_opt;
  det_opt.stochastic = false;
  det_opt.max_depth = 5;
  for (int i = 0; i < 500; ++i) {
    auto [raw, claimed] = det_gen.expr(det_opt);
    Typed t = elaborate(TypeEnv{}, raw);
    if (!inhabits(eval_det(Env{}, t.expr), t.type)) ++bad;
  }

  Gen sto_gen(884423);
  GenOptions sto_opt;
  sto_opt.stochastic = true;
  sto_opt.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    auto [raw, claimed] = sto_gen.expr(sto_opt);
    Typed t = elaborate(TypeEnv{}, raw);
    Dist d = eval_dist(Env{}, t.expr);
    for (const auto& [v, p] : d.pmf()) {
      if (!inhabits(v, t.type)) ++bad;
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
      RngState st{s};
      if (!inhabits(eval_rand(Env{}, t.expr, st), t.type)) ++bad;
    }
  }
  note += "500 deterministic + 500 stochastic x (support + 20 seeds), " +
          std::to_string(bad) + " escapes";
  return bad == 0;
}

// All type terms of depth <= 3 over the six-symbol alphabet
// {none, bool, list+ of _, bag of _, (#1: _), @a(_)}.
std::vector<Type> all_terms(int depth) {
  std::vector<Type> out = {Type::none(), Type::boolean()};
  if (depth <= 1) return out;
  for (const Type& t : all_terms(depth - 1)) {
    out.push_back(Type::coll(Shape::List, Mode::Pos, t));
    out.push_back(Type::coll(Shape::Bag, Mode::Opt, t));
    out.push_back(Type::prod({{FieldId::positional(1), t}}));
    out.push_back(Type::sum({{"a", t}}));
  }
  return out;
}

// Every value of depth <= d whose constructors the alphabet above can type:
// the numbers 0 and 1, lists and bags of at most two instances, one-field
// records, @a tags. A nonempty alphabet type of depth d has a witness here.
std::vector<Val> value_universe(int depth) {
  std::set<Val, MetaLess> cur = {Val::num(0L), Val::num(1L),
                                 Val::empty_coll(Shape::List), Val::empty_coll(Shape::Bag)};
  for (int d = 2; d <= depth; ++d) {
    std::vector<Val> prev(cur.begin(), cur.end());
    for (const Val& v : prev) {
      std::vector<Val> one = {v};
      cur.insert(Val::coll_of(Shape::List, one));
      cur.insert(Val::coll_of(Shape::Bag, one));
      cur.insert(Val::record({{FieldId::positional(1), v}}));
      cur.insert(Val::tag("a", v));
      for (const Val& w : prev) {
        std::vector<Val> two = {v, w};
        cur.insert(Val::coll_of(Shape::List, two));
        cur.insert(Val::coll_of(Shape::Bag, two));
      }
    }
  }
  return std::vector<Val>(cur.begin(), cur.end());
}

bool emptiness_and_subtyping(std::string& note) {
  std::vector<Type> terms = all_terms(3);
  std::vector<Val> univ = value_universe(3);
  int bad = 0;
  for (const Type& t : terms) {
    bool witnessed = false;
    for (const Val& v : univ) {
      if (inhabits(v, t)) {
        witnessed = true;
        break;
      }
    }
    if (type_empty(t) == witnessed) ++bad;
  }
  note += std::to_string(terms.size()) + " terms vs " + std::to_string(univ.size()) +
          " enumerated values";

  Gen gen(90210);
  int positive = 0;
  for (int i = 0; i < 10000; ++i) {
    Type t1 = gen.type(3);
    for (int guard = 0; type_empty(t1) && guard < 64; ++guard) t1 = gen.type(3);
    if (type_empty(t1)) continue;
    Val v = gen.val_of(t1);
    Type t2 = gen.type(3);
    if (subtype(t1, t2)) {
      ++positive;
      if (!inhabits(v, t2)) ++bad;
    }
    Type up = join(t1, t2);
    if (!subtype(t1, up) || !inhabits(v, up)) ++bad;
    Type down = meet(t1, t2);
    if (inhabits(v, down) && !subtype(down, t1)) ++bad;
  }
  note += "; 10000 triples (" + std::to_string(positive) + " direct subtype hits), " +
          std::to_string(bad) + " violations";
  return bad == 0;
}

Dist bind(const Dist& d, const std::function<Dist(const Val&)>& f) {
  std::vector<std::pair<Dist, Rational>> parts;
  for (const auto& [v, p] : d.pmf()) parts.emplace_back(f(v), p);
  return dmult(parts);
}

bool monad_laws(std::string& note) {
  Gen gen(31415);
  auto f = [](const Val& v) {
    return Dist::from_weighted(
        {{v, exact_rational("1", "2")}, {Val::tag("a", v), exact_rational("1", "2")}});
  };
  auto g = [](const Val& v) {
    return Dist::from_weighted({{Val::record({{FieldId::positional(1), v}}), exact_rational("1", "3")},
                                {v, exact_rational("2", "3")}});
  };
  auto as_delta = [](const Val& v) { return Dist::delta(v); };
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + gen.below(6);
    std::vector<std::pair<Val, Rational>> w;
    long total = 0;
    std::vector<long> raw(n);
    for (auto& r : raw) {
      r = static_cast<long>(gen.below(7)) + 1;
      total += r;
    }
    for (std::size_t k = 0; k < n; ++k) {
      Rational p(raw[k], total);
      p.canonicalize();
      w.emplace_back(gen.val_of(gen.concrete_type(2)), p);
    }
    Dist d = Dist::from_weighted(w);

    Val v0 = gen.val_of(gen.concrete_type(2));
    if (!(bind(Dist::delta(v0), f) == f(v0))) ++bad;
    if (!(bind(d, as_delta) == d)) ++bad;
    Dist left = bind(bind(d, f), g);
    Dist right = bind(d, [&](const Val& v) { return bind(f(v), g); });
    if (!(left == right)) ++bad;

    if (!(dmap(d, [](const Val& v) { return v; }) == d)) ++bad;
    auto h1 = [](const Val& v) { return Val::tag("a", v); };
    auto h2 = [](const Val& v) { return Val::record({{FieldId::positional(1), v}}); };
    if (!(dmap(dmap(d, h1), h2) == dmap(d, [&](const Val& v) { return h2(h1(v)); }))) ++bad;

    Dist other = Dist::from_weighted(
        {{Val::num(0L), exact_rational("1", "4")}, {Val::num(1L), exact_rational("3", "4")}});
    Dist paired = dpair(d, other);
    Dist fst = dmap(paired, [](const Val& v) { return v.record().at(FieldId::positional(1)); });
    Dist snd = dmap(paired, [](const Val& v) { return v.record().at(FieldId::positional(2)); });
    if (!(fst == d) || !(snd == other)) ++bad;
  }
  note += "1000 distributions, " + std::to_string(bad) + " law violations";
  return bad == 0;
}

struct ChiGolden {
  const char* file;
  std::uint64_t log_digest;
};

// Frozen first-run digests of the per-trial sample logs at the default
// seed; regenerate deliberately if the sampling order ever changes.
const ChiGolden kChiGoldens[] = {
    {"bernoulli_third.alea", 0x0ull},
    {"biased_coin.alea", 0x0ull},
    {"dependent_pair.alea", 0x0ull},
    {"dice_max.alea", 0x0ull},
    {"dice_sum.alea", 0x0ull},
    {"draw_two_sum.alea", 0x0ull},
    {"high_count.alea", 0x0ull},
    {"loaded_die.alea", 0x0ull},
    {"pair_draws.alea", 0x0ull},
    {"verdict_switch.alea", 0x0ull},
};

bool sampler_fidelity(std::string& note) {
  constexpr std::uint64_t kTrials = 100000;
  bool ok = true;
  double worst_p = 1.0;
  for (const ChiGolden& gold : kChiGoldens) {
    Typed t = infer_program(
        parse_program(slurp(std::filesystem::path(ALEA_FIXTURES_DIR) / "chi" / gold.file)));
    Dist exact = eval_dist(Env{}, t.expr);

    auto run = [&](std::string& log) {
      std::map<Val, std::uint64_t, MetaLess> counts;
      RngState st{kDefaultSeed};
      for (std::uint64_t i = 0; i < kTrials; ++i) {
        Val v = eval_rand(Env{}, t.expr, st);
        log += render_val(v);
        log += '\n';
        ++counts[v];
      }
      return counts;
    };
    std::string log1, log2;
    auto counts = run(log1);
    run(log2);
    if (log1 != log2) {
      ok = false;
      note += std::string(" [") + gold.file + ": reruns differ]";
    }
    std::uint64_t digest = fnv1a(log1);
    if (digest != gold.log_digest) {
      ok = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, " [%s: digest 0x%016llx]", gold.file,
                    static_cast<unsigned long long>(digest));
      note += buf;
    }

    double chi2 = 0.0;
    std::uint64_t seen = 0;
    for (const auto& [v, p] : exact.pmf()) {
      double expect = p.get_d() * static_cast<double>(kTrials);
      auto it = counts.find(v);
      double obs = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      if (it != counts.end()) seen += it->second;
      chi2 += (obs - expect) * (obs - expect) / expect;
    }
    if (seen != kTrials) {
      ok = false;
      note += std::string(" [") + gold.file + ": samples outside the support]";
      continue;
    }
    double p_tail = alea::testsupport::chi_square_tail(chi2, exact.support_size() - 1);
    worst_p = std::min(worst_p, p_tail);
    if (!(p_tail > 1e-6)) {
      ok = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, " [%s: tail %.3g]", gold.file, p_tail);
      note += buf;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "10 programs x %llu trials, worst tail %.3g",
                100000ull, worst_p);
  note = buf + note;
  return ok;
}

bool surface_corpus(std::string& note) {
  int bad = 0;
  for (const auto& entry : alea::testsupport::corpus()) {
    try {
      Expr e = parse_program(entry.source);
      TypeEnv env;
      for (const auto& [x, t] : entry.env) env = env.bind(x, t);
      Typed typed = elaborate(env, e);
      if (type_empty(typed.type)) throw TypeError("empty result type");
    } catch (const std::exception& ex) {
      ++bad;
      note += " [" + entry.name + ": " + ex.what() + "]";
    }
  }
  bool identity = parse_program("{ x ← S | x ≥ 0 }") == parse_program("{ x | x ← S; x ≥ 0 }");
  if (!identity) note += " [generator-as-map identity broken]";
  note = std::to_string(alea::testsupport::corpus().size()) + " fragments, " +
         std::to_string(bad) + " rejections; generator-as-map identity " +
         (identity ? "holds" : "fails") + note;
  return bad == 0 && identity;
}

}  // namespace

int main() {
  struct Criterion {
    const char* what;
    bool (*check)(std::string&);
  };
  const Criterion criteria[] = {
      {"storyteller win mass is exactly 90661502737169/10^14", storyteller_win_mass},
      {"first-roll-fumbles variant renders exactly 0.91182365", storyteller_variant_decimal},
      {"three-of-a-kind expectation is exactly 17/144", three_of_a_kind_expectation},
      {"coin distribution is exactly {@head 503/1000, @ship 497/1000}", coin_distribution},
      {"object-level containment table", containment_table},
      {"deterministic programs evaluate to point distributions", deterministic_point_masses},
      {"all evaluation modes land inside the inferred type", results_inhabit_types},
      {"emptiness matches exhaustive enumeration; subtyping is sound", emptiness_and_subtyping},
      {"distribution monad laws hold exactly", monad_laws},
      {"sampler matches exact distributions; sample logs reproducible", sampler_fidelity},
      {"quoted surface corpus type-checks; comprehension identity", surface_corpus},
  };

  int failures = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    std::string note;
    bool ok = false;
    try {
      ok = c.check(note);
    } catch (const std::exception& ex) {
      note += std::string("exception: ") + ex.what();
    }
    if (!ok) ++failures;
    std::printf("%s %2d  %s%s%s%s\n", ok ? "PASS" : "FAIL", idx, c.what,
                note.empty() ? "" : " -- ", note.c_str(), "");
    std::fflush(stdout);
  }
  if (failures != 0) std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
