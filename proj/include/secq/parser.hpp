#pragma once

#include <string_view>

#include "secq/algebra.hpp"
#include "secq/errors.hpp"

namespace secq {

// Reads the operator-expression language:
//
//   expression := term (('+'|'-') term)*
//   term       := [sign] [rational] factor*
//   factor     := tensor | operator
//   tensor     := 'h[' idx ',' idx ']' | 'V[' idx{4} ']' | 'A[' idx{4} ']'
//               | 'd[' idx ',' idx ']' | 't[' idxlist '=>' idxlist ']'
//   operator   := 'c(' idx ')' | 'a(' idx ')'
//   idx        := letter [digits] [':' ('occ'|'vir'|'gen')]
//   rational   := digits ['/' digits]
//
// '#' starts a line comment. A term needs a rational or at least one factor.
// Index spaces come from the letter families i..n / a..d / p..s unless
// annotated; an index may appear at most twice per term (twice = summed).
// Zero-coefficient terms are dropped. Throws ParseError with 1-based
// line/column on malformed input.
Expression parse(std::string_view text);

}  // namespace secq
