#include "alea/dist.hpp"

#include "alea/error.hpp"

namespace alea {

Dist Dist::delta(Val v) {
  Pmf pmf;
  pmf.emplace(std::move(v), Rational(1));
  return Dist(std::move(pmf));
}

Dist Dist::from_weighted(const std::vector<std::pair<Val, Rational>>& w) {
  Pmf pmf;
  Rational total(0);
  for (const auto& [v, p] : w) {
    if (sgn(p) < 0) throw InternalError("negative probability");
    if (sgn(p) == 0) continue;
    pmf[v] += p;
    total += p;
  }
  if (cmp(total, Rational(1)) != 0)
    throw InternalError("probabilities must sum to 1");
  return Dist(std::move(pmf));
}

Rational Dist::prob(const Val& v) const {
  auto it = pmf_.find(v);
  return it == pmf_.end() ? Rational(0) : it->second;
}

bool operator==(const Dist& a, const Dist& b) {
  if (a.pmf_.size() != b.pmf_.size()) return false;
  auto ib = b.pmf_.begin();
  for (auto ia = a.pmf_.begin(); ia != a.pmf_.end(); ++ia, ++ib) {
    if (!meta_equal(ia->first, ib->first)) return false;
    if (cmp(ia->second, ib->second) != 0) return false;
  }
  return true;
}

void Dist::validate() const {
  Rational total(0);
  for (const auto& [v, p] : pmf_) {
    if (sgn(p) <= 0) throw InternalError("distribution weight not positive");
    total += p;
  }
  if (cmp(total, Rational(1)) != 0)
    throw InternalError("distribution mass is not 1");
}

Dist dmap(const Dist& d, const std::function<Val(const Val&)>& f) {
  std::vector<std::pair<Val, Rational>> w;
  w.reserve(d.pmf().size());
  for (const auto& [v, p] : d.pmf()) w.emplace_back(f(v), p);
  return Dist::from_weighted(w);
}

Dist dmult(const std::vector<std::pair<Dist, Rational>>& parts) {
  std::vector<std::pair<Val, Rational>> w;
  for (const auto& [d, q] : parts) {
    if (sgn(q) == 0) continue;
    for (const auto& [v, p] : d.pmf()) w.emplace_back(v, Rational(p * q));
  }
  return Dist::from_weighted(w);
}

Dist dconv(const Dist& a, const Dist& b,
           const std::function<Val(const Val&, const Val&)>& f) {
  std::vector<std::pair<Val, Rational>> w;
  w.reserve(a.pmf().size() * b.pmf().size());
  for (const auto& [x, p] : a.pmf())
    for (const auto& [y, q] : b.pmf()) w.emplace_back(f(x, y), Rational(p * q));
  return Dist::from_weighted(w);
}

Dist dpair(const Dist& a, const Dist& b) {
  return dconv(a, b, [](const Val& x, const Val& y) {
    return Val::record({{FieldId::positional(1), x},
                        {FieldId::positional(2), y}});
  });
}

Number dmean(const Dist& d) {
  Rational acc(0);
  for (const auto& [v, p] : d.pmf()) {
    if (v.kind() != ValKind::Num)
      throw InternalError("mean of a non-numeric distribution");
    if (v.num().is_nan()) return Number::nan();
    acc += v.num().rat() * p;
  }
  return Number(std::move(acc));
}

Dist dpow_iid(const Dist& d, std::uint64_t n,
              const std::function<Val(const Val&, const Val&)>& combine,
              const std::optional<Val>& neutral) {
  if (n == 0) {
    if (!neutral) throw InternalError("dpow_iid: 0 draws without a neutral");
    return Dist::delta(*neutral);
  }
  // Exponentiation by squaring over independent combination.
  std::optional<Dist> acc;
  Dist sq = d;
  std::uint64_t k = n;
  while (true) {
    if (k & 1) acc = acc ? dconv(*acc, sq, combine) : sq;
    k >>= 1;
    if (k == 0) break;
    sq = dconv(sq, sq, combine);
  }
  return *acc;
}

}  // namespace alea
