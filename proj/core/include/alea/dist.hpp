#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "alea/value.hpp"

namespace alea {

// Finitely supported exact probability distribution over values. The
// support is keyed and collated by meta-identity, every probability is a
// positive rational, and the probabilities sum to exactly 1.
class Dist {
 public:
  using Pmf = std::map<Val, Rational, MetaLess>;

  static Dist delta(Val v);
  // Collates by meta-identity and drops zero weights; the remaining
  // weights must be positive and sum to 1.
  static Dist from_weighted(const std::vector<std::pair<Val, Rational>>& w);

  const Pmf& pmf() const { return pmf_; }
  std::size_t support_size() const { return pmf_.size(); }
  // Probability of a value, 0 outside the support.
  Rational prob(const Val& v) const;

  friend bool operator==(const Dist& a, const Dist& b);
  friend bool operator!=(const Dist& a, const Dist& b) { return !(a == b); }

  // Checks all representation invariants; throws InternalError.
  void validate() const;

 private:
  explicit Dist(Pmf pmf) : pmf_(std::move(pmf)) {}
  Pmf pmf_;
};

// Functor action: image distribution under f, collated.
Dist dmap(const Dist& d, const std::function<Val(const Val&)>& f);

// Monad multiplication: mixture of distributions with the given positive
// weights summing to 1.
Dist dmult(const std::vector<std::pair<Dist, Rational>>& parts);

// Independent combination: distribution of f(x, y) for independent x, y.
Dist dconv(const Dist& a, const Dist& b,
           const std::function<Val(const Val&, const Val&)>& f);

// Independent pairing as a two-field positional record.
Dist dpair(const Dist& a, const Dist& b);

// Expected value; requires numeric support. NaN anywhere in the support
// makes the mean NaN.
Number dmean(const Dist& d);

// Distribution of combine(x1, ..., xn) over n independent draws from d,
// for associative commutative combine, by repeated squaring. n == 0
// yields delta(neutral) and requires one.
Dist dpow_iid(const Dist& d, std::uint64_t n,
              const std::function<Val(const Val&, const Val&)>& combine,
              const std::optional<Val>& neutral = std::nullopt);

}  // namespace alea
