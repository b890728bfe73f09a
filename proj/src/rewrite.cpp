#include "secq/rewrite.hpp"

#include <algorithm>

#include "secq/errors.hpp"

namespace secq {

Direction direction(const FermionOp& op) {
  switch (op.index.space) {
    case OrbitalSpace::General:
      return Direction::Stationary;
    case OrbitalSpace::Occupied:
      return op.kind == OpKind::Create ? Direction::MoveRight
                                       : Direction::MoveLeft;
    case OrbitalSpace::Virtual:
      return op.kind == OpKind::Create ? Direction::MoveLeft
                                       : Direction::MoveRight;
  }
  return Direction::Stationary;
}

Expression swap_adjacent(const Term& term, size_t pos) {
  if (pos + 1 >= term.ops.size())
    throw EvalError("swap position outside the operator string");
  const FermionOp& x = term.ops[pos];
  const FermionOp& y = term.ops[pos + 1];

  if (x == y) return {};  // aa = a+a+ = 0 on the same index

  Expression out;
  if (x.kind != y.kind && intersect(x.index.space, y.index.space)) {
    Term delta = term;
    delta.ops.erase(delta.ops.begin() + pos, delta.ops.begin() + pos + 2);
    delta.tensors.push_back(
        {TensorKind::Delta, {x.index, y.index}, 0});
    normalize_term(delta);
    out.terms.push_back(std::move(delta));
  }
  Term swapped = term;
  std::swap(swapped.ops[pos], swapped.ops[pos + 1]);
  swapped.coefficient = -swapped.coefficient;
  out.terms.push_back(std::move(swapped));
  return out;
}

Expression one_step(const Term& term) {
  const auto& ops = term.ops;
  for (size_t k = ops.size(); k-- > 0;) {
    if (direction(ops[k]) != Direction::MoveRight) continue;
    if (k + 1 == ops.size()) return {};  // annihilates the ket
    return swap_adjacent(term, k);
  }
  for (size_t k = 0; k < ops.size(); ++k) {
    if (direction(ops[k]) != Direction::MoveLeft) continue;
    if (k == 0) return {};  // annihilates the bra
    return swap_adjacent(term, k - 1);
  }
  return {{term}};
}

Expression split_general(const Term& term) {
  if (term.ops.empty())
    throw EvalError("split needs at least one operator");
  for (const auto& op : term.ops)
    if (direction(op) != Direction::Stationary)
      throw EvalError("split requires every remaining operator be general");

  const Index target = term.ops.front().index;
  Expression out;
  for (OrbitalSpace space :
       {OrbitalSpace::Occupied, OrbitalSpace::Virtual}) {
    Term branch = term;
    if (target.binding == Binding::Dummy) {
      auto used = labels_in_use(term);
      std::string label;
      for (int ordinal = 0;; ++ordinal) {
        label = fresh_label(space, ordinal);
        if (!used.count(label)) break;
      }
      substitute_label(branch, target.label,
                       Index{label, space, Binding::Dummy});
    } else {
      // A free index is a case parameter: keep the label, narrow the space.
      substitute_label(branch, target.label,
                       Index{target.label, space, Binding::Free});
    }
    out.terms.push_back(std::move(branch));
  }
  return out;
}

namespace {

bool more_general(OrbitalSpace a, OrbitalSpace b) {
  return a == OrbitalSpace::General && b != OrbitalSpace::General;
}

}  // namespace

std::optional<Term> apply_deltas(const Term& term) {
  Term out = term;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < out.tensors.size(); ++k) {
      const TensorFactor& t = out.tensors[k];
      if (t.kind != TensorKind::Delta) continue;
      const Index x = t.indices[0];
      const Index y = t.indices[1];
      if (x.label == y.label) continue;  // d[x,x]: a cardinality factor
      if (!intersect(x.space, y.space)) return std::nullopt;

      // x may be substituted away iff it is summed over a range covering y.
      bool x_goes = x.binding == Binding::Dummy &&
                    (x.space == OrbitalSpace::General || x.space == y.space);
      bool y_goes = y.binding == Binding::Dummy &&
                    (y.space == OrbitalSpace::General || y.space == x.space);
      if (x_goes && y_goes) {
        if (more_general(x.space, y.space))
          y_goes = false;
        else if (more_general(y.space, x.space))
          x_goes = false;
        else  // equally specific: the later label goes
          (x.label < y.label ? x_goes : y_goes) = false;
      }
      if (!x_goes && !y_goes) continue;  // kept: both free, or kept general

      const Index& gone = x_goes ? x : y;
      const Index& kept = x_goes ? y : x;
      out.tensors.erase(out.tensors.begin() + k);
      substitute_label(out, gone.label, kept);
      changed = true;
      break;
    }
  }
  return out;
}

std::uint64_t movement_measure(const Term& term) {
  std::uint64_t m = 0;
  const size_t n = term.ops.size();
  for (size_t k = 0; k < n; ++k) {
    switch (direction(term.ops[k])) {
      case Direction::MoveRight: m += n - 1 - k; break;
      case Direction::MoveLeft: m += k; break;
      case Direction::Stationary: break;
    }
  }
  return m;
}

Expression fixpoint(const Expression& expr, FixpointStats* stats) {
  FixpointStats local;
  std::vector<Term> terms;
  for (const auto& term : expr.terms)
    if (auto t = apply_deltas(term)) terms.push_back(std::move(*t));

  // Bounded by the movement measure between splits and by the finite number
  // of general indices; the cap is a backstop for broken invariants.
  const std::uint64_t round_cap = 1'000'000;
  while (true) {
    if (++local.rounds > round_cap)
      throw EvalError("rewrite failed to reach a fixed point");
    bool changed = false;
    std::vector<Term> next;
    next.reserve(terms.size());
    for (const auto& term : terms) {
      if (term.ops.empty()) {
        next.push_back(term);
        continue;
      }
      Expression stepped = one_step(term);
      if (stepped.terms.size() == 1 && stepped.terms[0] == term) {
        next.push_back(term);  // stuck on general indices
        continue;
      }
      changed = true;
      for (auto& t : stepped.terms)
        if (auto applied = apply_deltas(t))
          next.push_back(std::move(*applied));
    }
    terms.swap(next);
    local.peak_terms = std::max(local.peak_terms,
                                static_cast<std::uint64_t>(terms.size()));
    if (changed) continue;

    bool any_stuck = false;
    std::vector<Term> split;
    split.reserve(terms.size());
    for (const auto& term : terms) {
      if (term.ops.empty()) {
        split.push_back(term);
        continue;
      }
      any_stuck = true;
      Expression branches = split_general(term);
      for (auto& b : branches.terms) split.push_back(std::move(b));
    }
    if (!any_stuck) break;
    terms.swap(split);
    local.peak_terms = std::max(local.peak_terms,
                                static_cast<std::uint64_t>(terms.size()));
  }
  if (stats) *stats = local;
  return {std::move(terms)};
}

}  // namespace secq
