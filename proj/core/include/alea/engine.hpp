#pragma once

#include <cstdint>
#include <vector>

#include "alea/ast.hpp"
#include "alea/dist.hpp"

namespace alea {

// Type of an expression under the given variable typing. Throws TypeError
// for unbound variables, unresolvable applications, uncovered switches,
// shape-mismatched iterations and ill-typed field selections.
Type infer(const TypeEnv& env, const Expr& e);

struct Typed {
  Expr expr;
  Type type;
};

// infer plus elaboration: folds of + over collections are committed to
// their element class (see specialize_fold), so evaluation never meets an
// ambiguous empty fold. The returned tree types identically to the input.
Typed elaborate(const TypeEnv& env, const Expr& e);

// Typing of a closed program: elaborates and additionally rejects result
// types with no values at all.
Typed infer_program(const Expr& e);

struct EvalOptions {
  // Evaluate s-deterministic subtrees once instead of through the
  // distribution recursion.
  bool det_fastpath = true;
  // Batch iteration elements whose bodies have identical distributions
  // into one repeated-squaring power (bags and sets only).
  bool iid_pow = true;
};

// Value of an s-deterministic expression. Requires every free variable
// bound; the expression must contain no choices, draws or expectations.
Val eval_det(const Env& env, const Expr& e);

// Exact result distribution of a well-typed expression.
Dist eval_dist(const Env& env, const Expr& e, const EvalOptions& opts = {});

// Pseudo-random evaluation. The generator state is the single word of a
// splitmix64 stream; every draw consumes as many words as rejection
// sampling needs, and one-outcome draws consume none.
struct RngState {
  std::uint64_t word;
};

constexpr std::uint64_t kDefaultSeed = 0xA1EA5EEDull;

std::uint64_t rng_next(RngState& st);

// Index into probs (0-based) drawn with the given exact probabilities,
// which must be positive and sum to 1. probs.size() == 1 consumes no
// randomness.
std::size_t random_index(RngState& st, const std::vector<Rational>& probs);

// One sample of a well-typed expression.
Val eval_rand(const Env& env, const Expr& e, RngState& st);

}  // namespace alea
