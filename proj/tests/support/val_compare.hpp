#pragma once

#include "alea/text.hpp"
#include "alea/value.hpp"
#include "doctest.h"

namespace alea {

// Test shorthand: values compare by meta-identity, the same identity the
// evaluator keys distributions and collections by. Object-level equality
// (NaN-rejecting) stays explicit as star_equal.
inline bool operator==(const Val& a, const Val& b) { return meta_equal(a, b); }
inline bool operator!=(const Val& a, const Val& b) { return !meta_equal(a, b); }

inline doctest::String toString(const Val& v) { return render_val(v).c_str(); }

}  // namespace alea
