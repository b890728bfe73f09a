#pragma once

#include <cstdint>
#include <optional>

#include "secq/algebra.hpp"

namespace secq {

// Where an operator must travel to hit its vanishing rule against the
// reference determinant. Creation on an occupied orbital and annihilation on
// a virtual one kill the ket (move right); their mirror images kill the bra
// (move left). General-index operators sit still until split.
enum class Direction : std::uint8_t { MoveRight, MoveLeft, Stationary };

Direction direction(const FermionOp& op);

// Anticommutes ops[pos] with ops[pos+1]. Identical operators square to
// zero (empty result). Operators of the same kind swap with a sign flip;
// a creation/annihilation pair additionally spawns a delta term unless the
// two index spaces are disjoint.
Expression swap_adjacent(const Term& term, size_t pos);

// One rewrite of Algorithm "move an operator one place": the rightmost
// right-mover swaps with its right neighbour (or kills the term from the
// last slot); failing that the leftmost left-mover swaps with its left
// neighbour (or kills the term from the first slot); otherwise no change.
Expression one_step(const Term& term);

// Case split of the leftmost (general-index) operator of a term whose
// operators are all Stationary: one copy per concrete space. A Dummy index
// is renamed to a fresh occupied/virtual label in both of its occurrences;
// a Free index keeps its label and only narrows its space.
Expression split_general(const Term& term);

// Contracts the term's deltas to a fixed point. Disjoint spaces zero the
// term (empty optional). A delta with a summed index whose range covers the
// partner is removed and the summed index substituted away (the more general
// label goes, ties break toward the lexicographically earlier label). Deltas
// between two free indices, and cardinality deltas d[x,x], are kept.
std::optional<Term> apply_deltas(const Term& term);

// Sum over every right-mover of the operators strictly right of it, plus
// every left-mover's count to its left. Strictly decreases on each
// productive one_step output that keeps its operator count.
std::uint64_t movement_measure(const Term& term);

struct FixpointStats {
  std::uint64_t rounds = 0;
  std::uint64_t peak_terms = 0;
};

// Iterates one_step over all terms (deltas applied eagerly to every new
// term), splitting stationary general indices when nothing else moves,
// until every surviving term is operator-free.
Expression fixpoint(const Expression& expr, FixpointStats* stats = nullptr);

}  // namespace secq
