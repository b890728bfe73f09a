#include "secq/evaluate.hpp"

#include "secq/canonicalize.hpp"
#include "secq/errors.hpp"

namespace secq {

Expression evaluate(const Expression& expr, EvalStats* stats) {
  FixpointStats fstats;
  Expression flat = fixpoint(expr, &fstats);
  for (const auto& term : flat.terms)
    if (!term.ops.empty())
      throw EvalError("operators remained after rewriting: " +
                      serialize(term));
  Expression resolved;
  resolved.terms.reserve(flat.terms.size());
  for (const auto& term : flat.terms)
    if (auto kept = apply_deltas(term)) resolved.terms.push_back(*kept);
  if (stats) {
    stats->iterations = fstats.rounds;
    stats->raw_terms = resolved.terms.size();
  }
  return simplify(resolved);
}

}  // namespace secq
