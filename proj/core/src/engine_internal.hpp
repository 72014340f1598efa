#pragma once

#include "alea/ast.hpp"

// Switch-branch selection shared by the evaluation modes.
namespace alea::detail {

// Branch of a numeric switch selected by a scrutinee value: the matching
// key's branch, else the default. NaN matches no key. Returns nullptr
// when nothing applies, which typing rules out on covered switches.
const Expr* nswitch_branch(const Expr& sw, const Number& n);

struct CaseSel {
  const CHandler* handler = nullptr;  // set when a case matches
  const Expr* dflt = nullptr;         // set when the default applies
};

CaseSel cswitch_select(const Expr& sw, const CaseId& c);

}  // namespace alea::detail
