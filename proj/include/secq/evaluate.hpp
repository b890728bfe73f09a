#pragma once

#include "secq/algebra.hpp"
#include "secq/rewrite.hpp"

namespace secq {

struct EvalStats {
  std::size_t iterations = 0;  // rewrite rounds until no operators remained
  std::size_t raw_terms = 0;   // operator-free terms before merging
};

// Full pipeline: eliminate all operators against the reference, resolve
// deltas, then canonicalize and merge the surviving terms.
Expression evaluate(const Expression& expr, EvalStats* stats = nullptr);

}  // namespace secq
