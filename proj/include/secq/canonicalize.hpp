#pragma once

#include <optional>
#include <string>

#include "secq/algebra.hpp"

namespace secq {

// Minimal representative of a tensor under its index symmetries. `sign` is
// -1 when an odd antisymmetric image was chosen and must be absorbed into
// the term's coefficient. `zero` marks an antisymmetrized integral whose
// orbit contains the same index tuple with both signs (the factor vanishes).
struct CanonicalTensor {
  TensorFactor tensor;
  int sign = 1;
  bool zero = false;
};

// h is symmetric; V has the two-electron symmetry (pq|rs)=(rs|pq)=(qp|sr)=
// (sr|qp); A additionally changes sign under swapping either pair; deltas
// sort their indices; amplitudes carry no symmetry and pass through.
CanonicalTensor canonical_tensor(const TensorFactor& t);

// Renames Dummy indices, per space, to the fresh-label sequences in order of
// first appearance over the sorted factors. Free labels are never touched
// and never captured. Requires an operator-free term.
Term relabel_dummies(const Term& term);

struct CanonicalTerm {
  Term term;
  std::string key;  // term_key of the canonical form; the merge identity
};

// Iterates canonical_tensor + sort + relabel_dummies to a fixed point.
// Empty optional means the term vanished (zero tensor factor).
std::optional<CanonicalTerm> canonicalize_term(const Term& term);

// Ascending canonical-string order; stable, so equal keys keep their
// relative input order for the merge pass.
Expression sort_terms(const Expression& expr);

// Sums coefficients over runs of equal canonical keys, dropping zeros.
Expression merge_terms(const Expression& expr);

// Greedily replaces pairs {c * X * V[p,q,r,s], -c * X * V[p,q,s,r]} by
// c * X * A[p,q,r,s], scanning terms in canonical order. Unpaired bare
// integrals stay as they are.
Expression antisymmetrize(const Expression& expr);

// canonicalize + sort + merge + antisymmetrize + final sort/merge.
Expression simplify(const Expression& expr);

}  // namespace secq
