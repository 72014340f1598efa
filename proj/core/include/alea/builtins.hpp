#pragma once

#include <optional>
#include <string>

#include "alea/ast.hpp"
#include "alea/dist.hpp"
#include "alea/type.hpp"
#include "alea/value.hpp"

namespace alea {

// Properties of a binary function relative to a stated element domain.
// They gate reduction: folding needs associativity always, commutativity
// over bags and sets, idempotence over sets, and a neutral element when
// the collection may be empty.
struct AlgebraicFlags {
  bool associative = false;
  bool commutative = false;
  bool idempotent = false;
  std::optional<Val> neutral;
};

bool fun_exists(const FunId& f);
// Functions a source program may name directly; the rest only appear in
// desugared or elaborated trees.
bool fun_is_surface(const FunId& f);

// Least result type over all signatures of f that accept the argument
// type; a single collection argument selects the fold reading of a
// binary function. Throws TypeError when nothing matches.
Type resolve_fun(const FunId& f, const Type& arg, SourcePos pos = {});

// Evaluates f; total on every resolvable argument domain. A collection
// argument of a binary function folds it over the elements.
Val apply_fun(const FunId& f, const Val& arg);

// Flags of f on the given element domain, or nullopt when f is not a
// foldable binary function there.
std::optional<AlgebraicFlags> reduce_flags(const FunId& f, const Type& elem);

// The fold of "+" over an empty collection depends on the static element
// domain (0, [], bag, or set), which the value alone cannot supply. Type
// checking therefore rewrites such applications to an internal
// domain-committed name; this returns it (nullopt: no rewrite needed).
std::optional<FunId> specialize_fold(const FunId& f, const Type& arg);

bool dist_exists(const DistId& d);
// Result type of drawing from the named distribution with a parameter of
// the given type. Throws TypeError.
Type resolve_dist(const DistId& d, const Type& arg, SourcePos pos = {});
// Builds the distribution for one parameter value. Throws EvalError for
// an empty uniform pool or a Bernoulli parameter outside [0, 1].
Dist make_dist(const DistId& d, const Val& arg);

// Markdown table of every builtin, generated from the registry.
std::string builtins_doc();

}  // namespace alea
